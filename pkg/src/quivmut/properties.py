"""Property predicates on quivers, forks, and the acyclic order of abundant quivers."""

from __future__ import annotations

import enum
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass

from .errors import AbundanceViolation
from .isomorphism import embeds
from .quiver import Quiver, components, mutate, restrict


class Verdict(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, flag: bool) -> "Verdict":
        return cls.YES if flag else cls.NO


@dataclass(frozen=True)
class Finite:
    pass


@dataclass(frozen=True)
class Connected:
    pass


@dataclass(frozen=True)
class Acyclic:
    pass


@dataclass(frozen=True)
class Abundant:
    pass


@dataclass(frozen=True)
class HasWeightIn:
    values: frozenset[int]

    def __post_init__(self):
        if not self.values or any(v < 0 for v in self.values):
            raise ValueError("weights are a nonempty set of nonnegative integers")


@dataclass(frozen=True)
class MutationAcyclicWithin:
    depth: int

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")


@dataclass(frozen=True)
class TameWithin:
    depth: int

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")


PropertyKind = Finite | Connected | Acyclic | Abundant | HasWeightIn | MutationAcyclicWithin | TameWithin


def is_connected(q: Quiver) -> bool:
    """At most one component containing an arrow; isolated vertices do not count."""
    return len(components(q)) <= 1


def is_acyclic(q: Quiver, vertices: Iterable[int] | None = None) -> bool:
    """No oriented cycle along positive arrows (optionally inside ``vertices``)."""
    return topological_order(q, vertices) is not None


def topological_order(q: Quiver, vertices: Iterable[int] | None = None) -> list[int] | None:
    verts = sorted(q.support() if vertices is None else set(vertices))
    inside = set(verts)
    indeg = {v: sum(1 for u, m in q.neighbors(v).items() if m < 0 and u in inside) for v in verts}
    ready = deque(v for v in verts if indeg[v] == 0)
    order = []
    while ready:
        v = ready.popleft()
        order.append(v)
        for w, m in sorted(q.neighbors(v).items()):
            if m > 0 and w in inside:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
    return order if len(order) == len(verts) else None


def is_abundant(q: Quiver, vertices: Iterable[int] | None = None) -> bool:
    verts = sorted(q.support() if vertices is None else set(vertices))
    return all(abs(q(a, b)) >= 2 for i, a in enumerate(verts) for b in verts[i + 1:])


def has_weight(q: Quiver, m: int) -> bool:
    """Whether some pair carries exactly ``m`` arrows (``m == 0`` always holds)."""
    return m == 0 or any(abs(c) == m for _, _, c in q.arrows())


def _bfs_words(q: Quiver, depth: int):
    """Yield every quiver reachable by at most ``depth`` mutations, each once."""
    seen = {q}
    frontier = [q]
    yield q
    verts = sorted(q.support())
    for _ in range(depth):
        nxt = []
        for cur in frontier:
            for x in verts:
                r = mutate(cur, x)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
                    yield r
        frontier = nxt


def check_property(q: Quiver, prop: PropertyKind) -> Verdict:
    if isinstance(prop, Finite):
        return Verdict.YES
    if isinstance(prop, Connected):
        return Verdict.of(is_connected(q))
    if isinstance(prop, Acyclic):
        return Verdict.of(is_acyclic(q))
    if isinstance(prop, Abundant):
        return Verdict.of(is_abundant(q))
    if isinstance(prop, HasWeightIn):
        return Verdict.of(any(has_weight(q, m) for m in prop.values))
    if isinstance(prop, MutationAcyclicWithin):
        found = any(is_acyclic(r) for r in _bfs_words(q, prop.depth))
        return Verdict.YES if found else Verdict.UNKNOWN
    if isinstance(prop, TameWithin):
        wild = any(r.max_weight() > 2 for r in _bfs_words(q, prop.depth))
        return Verdict.NO if wild else Verdict.UNKNOWN
    raise TypeError(f"unknown property {prop!r}")


def avoids(q: Quiver, family: Iterable[Quiver]) -> bool:
    """True when no member of ``family`` is isomorphic to a full subquiver of ``q``.

    ``q`` lives on all positive integers, so a member's isolated vertices may
    land on vertices outside the support of ``q``.
    """
    top = max(q.vertices(), default=0)
    for f in family:
        host = Quiver(q.arrows(), range(1, top + len(f.vertices()) + 1))
        if embeds(f, host) is not None:
            return False
    return True


# -- forks and acyclic orders ---------------------------------------------------


def fork_point(q: Quiver) -> int | None:
    """The point of return of ``q`` if ``q`` is a fork, else ``None``."""
    verts = sorted(q.support())
    if len(verts) < 3 or not is_abundant(q) or is_acyclic(q):
        return None
    found = []
    for r in verts:
        row = q.neighbors(r)
        ins = [i for i, m in row.items() if m < 0]
        outs = [j for j, m in row.items() if m > 0]
        f1 = all(q(j, i) > max(q(i, r), q(r, j)) for i in ins for j in outs)
        if f1 and is_acyclic(q, [v for v in verts if v != r]):
            found.append(r)
    assert len(found) <= 1, f"several points of return {found}"
    return found[0] if found else None


def acyclic_order(q: Quiver, vertices: Iterable[int]) -> list[int] | None:
    """The linear order with ``x`` before ``y`` iff ``Q(x, y) > 0``.

    The restriction to ``vertices`` must be abundant.  Returns ``None`` when
    it contains an oriented cycle.
    """
    verts = sorted(set(vertices))
    for i, a in enumerate(verts):
        for b in verts[i + 1:]:
            if abs(q(a, b)) < 2:
                raise AbundanceViolation(f"pair ({a}, {b}) has {abs(q(a, b))} arrows")
    return topological_order(q, verts)


def source_or_sink(q: Quiver, x: int) -> bool:
    row = q.neighbors(x).values()
    return all(m > 0 for m in row) or all(m < 0 for m in row)

