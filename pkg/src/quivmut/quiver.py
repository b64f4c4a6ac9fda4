"""Quivers as sparse skew-symmetric integer functions, and the pointwise operators on them.

A :class:`Quiver` stores ``Q(i, j)`` for every pair with at least one arrow.
``Q(j, i) == -Q(i, j)`` holds by construction, loops cannot be expressed, and
every vertex not mentioned is isolated.  Arrow counts are Python integers, so
the exponential growth produced by long mutation sequences is exact.

A quiver may also *declare* isolated vertices.  That only matters when a
finite quiver is viewed as an object on a fixed finite vertex set (mutation
classes); every pointwise operator treats declared vertices as ordinary
isolated vertices.
"""

from __future__ import annotations

import json
from collections.abc import Callable, Iterable, Iterator, Mapping
from typing import Union

from .errors import MalformedInput

VertexSet = frozenset
ArrowSpec = Union[Mapping[tuple[int, int], int], Iterable[tuple[int, int, int]]]


def _check_vertex(v: object) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or v <= 0:
        raise MalformedInput(f"vertices must be positive integers, got {v!r}")
    return v


class Quiver:
    """Immutable quiver with finite support.

    ``Quiver({(1, 2): 1, (2, 3): 1})`` is the path 1→2→3; triples
    ``(i, j, m)`` are accepted as well.  ``q(i, j)`` returns ``Q(i, j)``.
    """

    __slots__ = ("_adj", "_isolated", "_key")

    def __init__(self, arrows: ArrowSpec = (), isolated: Iterable[int] = ()):
        triples = ((a, b, m) for (a, b), m in arrows.items()) if isinstance(arrows, Mapping) else arrows
        adj: dict[int, dict[int, int]] = {}
        for a, b, m in triples:
            a, b = _check_vertex(a), _check_vertex(b)
            if a == b:
                raise MalformedInput(f"loop at vertex {a}")
            if isinstance(m, bool) or not isinstance(m, int):
                raise MalformedInput(f"arrow count must be an integer, got {m!r}")
            if b in adj.get(a, ()):
                raise MalformedInput(f"pair ({a}, {b}) given twice")
            if m:
                adj.setdefault(a, {})[b] = m
                adj.setdefault(b, {})[a] = -m
        declared = frozenset(_check_vertex(v) for v in isolated)
        self._init(adj, declared)

    def _init(self, adj: dict[int, dict[int, int]], isolated: frozenset[int]) -> None:
        self._adj = adj
        self._isolated = isolated.difference(adj)
        self._key = None

    @classmethod
    def _raw(cls, adj: dict[int, dict[int, int]], isolated: frozenset[int] = frozenset()) -> "Quiver":
        # Trusted constructor: adj must already be skew-symmetric with no zero entries.
        q = cls.__new__(cls)
        q._init(adj, isolated)
        return q

    # -- access -------------------------------------------------------------

    def __call__(self, i: int, j: int) -> int:
        return self._adj.get(i, {}).get(j, 0)

    def neighbors(self, x: int) -> dict[int, int]:
        """Map each neighbour ``y`` of ``x`` to ``Q(x, y)``."""
        return dict(self._adj.get(x, {}))

    def degree(self, x: int) -> int:
        return sum(abs(m) for m in self._adj.get(x, {}).values())

    def arrows(self) -> list[tuple[int, int, int]]:
        """Sorted triples ``(i, j, Q(i, j))`` with ``i < j``."""
        return sorted((a, b, m) for a, row in self._adj.items() for b, m in row.items() if a < b)

    def support(self) -> frozenset[int]:
        return frozenset(self._adj)

    @property
    def isolated(self) -> frozenset[int]:
        return self._isolated

    def vertices(self) -> frozenset[int]:
        """Support together with declared isolated vertices."""
        return self._isolated.union(self._adj)

    def arrow_total(self) -> int:
        return sum(abs(m) for _, _, m in self.arrows())

    def max_weight(self) -> int:
        return max((abs(m) for _, _, m in self.arrows()), default=0)

    def is_empty(self) -> bool:
        return not self._adj

    def __len__(self) -> int:
        return sum(len(row) for row in self._adj.values()) // 2

    # -- identity -----------------------------------------------------------

    def key(self) -> tuple:
        if self._key is None:
            self._key = (tuple(self.arrows()), tuple(sorted(self._isolated)))
        return self._key

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Quiver) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        parts = []
        for a, b, m in self.arrows():
            src, dst = (a, b) if m > 0 else (b, a)
            parts.append(f"{src}->{dst}" + (f"x{abs(m)}" if abs(m) != 1 else ""))
        extra = f"; isolated {sorted(self._isolated)}" if self._isolated else ""
        return f"Quiver({', '.join(parts)}{extra})"

    # -- transformations ------------------------------------------------------

    def relabel(self, mapping: Mapping[int, int] | Callable[[int], int]) -> "Quiver":
        """Rename vertices; the map must be injective on the vertex set."""
        f = mapping if callable(mapping) else mapping.__getitem__
        adj: dict[int, dict[int, int]] = {}
        for a, row in self._adj.items():
            fa = f(a)
            adj[fa] = {f(b): m for b, m in row.items()}
        if len(adj) != len(self._adj):
            raise ValueError("relabelling is not injective")
        return Quiver._raw(adj, frozenset(f(v) for v in self._isolated))

    def with_isolated(self, vertices: Iterable[int]) -> "Quiver":
        return Quiver._raw(self._adj, self._isolated.union(vertices))

    # -- serialisation ------------------------------------------------------

    def to_json(self) -> dict:
        out: dict = {"arrows": [list(t) for t in self.arrows()]}
        if self._isolated:
            out["isolated"] = sorted(self._isolated)
        return out

    def dumps(self) -> str:
        """Canonical JSON text; equal quivers give identical strings."""
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict | str) -> "Quiver":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "arrows" not in data:
            raise MalformedInput('quiver JSON needs an "arrows" list')
        triples = []
        for entry in data["arrows"]:
            if not isinstance(entry, list) or len(entry) != 3:
                raise MalformedInput(f"bad arrow entry {entry!r}")
            triples.append(tuple(entry))
        return cls(triples, data.get("isolated", ()))

    def to_dot(self, name: str = "Q") -> str:
        lines = [f"digraph {name} {{"]
        for v in sorted(self.vertices()):
            lines.append(f"  {v};")
        for a, b, m in self.arrows():
            src, dst = (a, b) if m > 0 else (b, a)
            lines.append(f'  {src} -> {dst} [label="{abs(m)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- pointwise operators ------------------------------------------------------


def mutate(q: Quiver, x: int) -> Quiver:
    """Mutation at ``x``: compose paths through ``x``, then reverse the arrows at ``x``."""
    row = q._adj.get(x)
    if not row:
        return q
    adj = dict(q._adj)
    for a in (x, *row):
        adj[a] = dict(adj[a])
    ins = [(v, m) for v, m in row.items() if m < 0]   # v -> x with multiplicity -m
    outs = [(w, m) for w, m in row.items() if m > 0]  # x -> w with multiplicity m
    for v, a in ins:
        for w, b in outs:
            new = adj[v].get(w, 0) + (-a) * b
            if new:
                adj[v][w] = new
                adj[w][v] = -new
            else:
                adj[v].pop(w, None)
                adj[w].pop(v, None)
    for y in row:
        adj[x][y] = -adj[x][y]
        adj[y][x] = -adj[y][x]
    return Quiver._raw(adj, q._isolated)


def mutate_word(q: Quiver, word: Iterable[int]) -> Quiver:
    """Apply mutations left to right: ``word[0]`` first."""
    for x in word:
        q = mutate(q, x)
    return q


def _declared(q: Quiver, v: frozenset[int], adj: dict) -> frozenset[int]:
    return frozenset(u for u in q.vertices() if u in v and u not in adj)


def restrict(q: Quiver, v: Iterable[int]) -> Quiver:
    """Keep only the arrows with both endpoints in ``v``."""
    v = frozenset(v)
    adj = {}
    for a in v:
        row = {b: m for b, m in q._adj.get(a, {}).items() if b in v}
        if row:
            adj[a] = row
    return Quiver._raw(adj, _declared(q, v, adj))


def overfill(q: Quiver, v: Iterable[int]) -> Quiver:
    """Keep only the arrows with at least one endpoint in ``v``."""
    v = frozenset(v)
    adj: dict[int, dict[int, int]] = {}
    for a in v:
        for b, m in q._adj.get(a, {}).items():
            adj.setdefault(a, {})[b] = m
            adj.setdefault(b, {})[a] = -m
    return Quiver._raw(adj, _declared(q, v, adj))


def support(q: Quiver) -> frozenset[int]:
    return q.support()


def glue(*parts: Quiver) -> Quiver:
    """Union of quivers that share no vertex pair."""
    adj: dict[int, dict[int, int]] = {}
    isolated: set[int] = set()
    for p in parts:
        for a, b, m in p.arrows():
            if b in adj.get(a, ()):
                raise ValueError(f"pair ({a}, {b}) appears in two parts")
            adj.setdefault(a, {})[b] = m
            adj.setdefault(b, {})[a] = -m
        isolated |= p.isolated
    return Quiver._raw(adj, frozenset(isolated))


def components(q: Quiver) -> list[frozenset[int]]:
    """Connected components of the underlying graph on the support."""
    seen: set[int] = set()
    out = []
    for start in sorted(q.support()):
        if start in seen:
            continue
        comp, stack = {start}, [start]
        while stack:
            for y in q._adj[stack.pop()]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        out.append(frozenset(comp))
    return out


# -- generators for infinite quivers ------------------------------------------


class QuiverGenerator:
    """An infinite quiver on the positive integers given through its windows.

    ``window(n)`` is the restriction to ``[1..n]``; larger windows extend
    smaller ones.  ``bandwidth`` ``b`` promises ``Q(i, j) == 0`` whenever
    ``|i - j| > b``, which is what lets trajectories grow their window
    lazily and still be exact.
    """

    def __init__(self, name: str, rule: Callable[[int, int], int], bandwidth: int):
        self.name = name
        self._rule = rule
        self.bandwidth = bandwidth

    def __call__(self, i: int, j: int) -> int:
        if i == j or abs(i - j) > self.bandwidth:
            return 0
        if i > j:
            return -self._rule(j, i)
        return self._rule(i, j)

    def window(self, n: int) -> Quiver:
        arrows = {}
        for i in range(1, n + 1):
            for j in range(i + 1, min(n, i + self.bandwidth) + 1):
                m = self(i, j)
                if m:
                    arrows[(i, j)] = m
        return Quiver(arrows)

    def arrows_beyond(self, lo: int, hi: int) -> Iterator[tuple[int, int, int]]:
        """Arrows ``(i, j, m)`` with ``i < j`` and ``lo < j <= hi``."""
        for j in range(lo + 1, hi + 1):
            for i in range(max(1, j - self.bandwidth), j):
                m = self(i, j)
                if m:
                    yield i, j, m

    def __repr__(self) -> str:
        return f"QuiverGenerator({self.name!r})"


def a_infinity() -> QuiverGenerator:
    """The one-sided ray 1→2→3→…"""
    return QuiverGenerator("a_infinity", lambda i, j: 1 if j == i + 1 else 0, 1)


GENERATORS: dict[str, Callable[[], QuiverGenerator]] = {"a_infinity": a_infinity}
