"""Framed quivers and c-vectors.

Framing adds, for every mutable vertex ``x``, a frozen companion with one
arrow ``x -> x'``.  The companion of ``x`` is stored as the vertex ``-x``, so
the sign of a vertex says whether it is frozen.  The c-vector of ``x`` lists
the arrow counts from ``x`` to each frozen companion.
"""

from __future__ import annotations

import enum
import json
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from .errors import FrozenMutation, MalformedInput, NotAbundantAcyclic, SignIncoherence, UnreducedWord
from .properties import acyclic_order, is_abundant
from .quiver import Quiver, mutate
from .words import Word, is_reduced


class Color(str, enum.Enum):
    GREEN = "green"
    RED = "red"


@dataclass(frozen=True)
class CVector:
    """Entries ``c[y]`` indexed by mutable vertices."""

    entries: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, mapping: Mapping[int, int]) -> "CVector":
        return cls(tuple(sorted(mapping.items())))

    def __getitem__(self, y: int) -> int:
        return dict(self.entries).get(y, 0)

    def values(self) -> tuple[int, ...]:
        """Entries in increasing vertex order."""
        return tuple(v for _, v in self.entries)

    def to_json(self) -> dict:
        return {str(y): v for y, v in self.entries}


@dataclass(frozen=True)
class FramedQuiver:
    quiver: Quiver
    mutable: frozenset[int]

    def mutable_part(self) -> Quiver:
        adj = {a: {b: m for b, m in row.items() if b > 0} for a, row in self.quiver._adj.items() if a > 0}
        return Quiver._raw({a: r for a, r in adj.items() if r})

    def to_json(self) -> dict:
        return {"arrows": [list(t) for t in self.quiver.arrows()], "mutable": sorted(self.mutable)}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict | str) -> "FramedQuiver":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            mutable = frozenset(data["mutable"])
            adj: dict[int, dict[int, int]] = {}
            for a, b, m in data["arrows"]:
                if a >= b or m == 0 or 0 in (a, b) or abs(a) not in mutable or abs(b) not in mutable:
                    raise MalformedInput(f"bad framed arrow {[a, b, m]}")
                adj.setdefault(a, {})[b] = m
                adj.setdefault(b, {})[a] = -m
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad framed quiver: {exc}") from None
        return cls(Quiver._raw(adj), mutable)


def frame(q: Quiver) -> FramedQuiver:
    mutable = q.support()
    adj = {a: dict(row) for a, row in q._adj.items()}
    for x in mutable:
        adj[x][-x] = 1
        adj[-x] = {x: -1}
    return FramedQuiver(Quiver._raw(adj), mutable)


def mutate_framed(fq: FramedQuiver, v: int) -> FramedQuiver:
    if v not in fq.mutable:
        raise FrozenMutation(f"vertex {v} is not mutable")
    out = mutate(fq.quiver, v)
    for a, row in out._adj.items():
        if a < 0 and any(b < 0 for b in row):
            raise SignIncoherence(f"arrow between frozen vertices after mutating at {v}")
    return FramedQuiver(out, fq.mutable)


def mutate_framed_word(fq: FramedQuiver, word: Iterable[int]) -> FramedQuiver:
    for v in word:
        fq = mutate_framed(fq, v)
    return fq


def c_vector(fq: FramedQuiver, x: int) -> CVector:
    if x not in fq.mutable:
        raise FrozenMutation(f"vertex {x} is not mutable")
    return CVector.of({y: fq.quiver(x, -y) for y in fq.mutable})


def color(fq: FramedQuiver, x: int) -> Color:
    vals = c_vector(fq, x).values()
    pos = any(v > 0 for v in vals)
    neg = any(v < 0 for v in vals)
    if pos and neg:
        raise SignIncoherence(f"c-vector of {x} has mixed signs: {vals}")
    if not pos and not neg:
        raise SignIncoherence(f"c-vector of {x} is zero")
    return Color.GREEN if pos else Color.RED


# -- the abundant acyclic family ------------------------------------------------


def qn_abundant(n: int) -> Quiver:
    """Vertices ``1..n+1`` with two arrows ``i -> j`` whenever ``i > j``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return Quiver({(i, j): -2 for i in range(1, n + 2) for j in range(i + 1, n + 2)})


def stabilized_c_vector(n: int) -> CVector:
    if n < 1:
        raise ValueError("n must be at least 1")
    entries = {i: 2 * 3 ** (n - i) for i in range(1, n + 1)}
    entries[n + 1] = 1
    return CVector.of(entries)


def _sink_first_order(q: Quiver) -> list[int]:
    verts = q.support()
    if not is_abundant(q):
        raise NotAbundantAcyclic("quiver is not abundant")
    order = acyclic_order(q, verts)
    if order is None:
        raise NotAbundantAcyclic("quiver has an oriented cycle")
    return order[::-1]


def is_triangular(w: Sequence[int], q: Quiver) -> bool:
    """First appearances in ``w`` go from the sink towards the source, skipping allowed."""
    rank = {v: k for k, v in enumerate(_sink_first_order(q))}
    if not is_reduced(w):
        raise UnreducedWord("triangularity is defined for reduced words")
    seen: set[int] = set()
    last = -1
    for x in w:
        if x not in rank:
            return False
        if x not in seen:
            if rank[x] < last:
                return False
            seen.add(x)
            last = rank[x]
    return True


def is_strongly_triangular(w: Sequence[int], q: Quiver, excluded: int) -> bool:
    if not is_triangular(w, q):
        return False
    return excluded not in w and set(w) == q.support() - {excluded}


def triangular_witness(w: Sequence[int], star: int, vertices: Iterable[int] = ()) -> Quiver:
    """Relabelled abundant acyclic quiver on which ``w`` is triangular.

    Vertices are the letters of ``w`` plus ``vertices`` plus ``star``.  Letters
    are ranked by first appearance (later-ranked vertices sending two arrows to
    earlier ones), the extra vertices come next in increasing order, and
    ``star`` is the source.
    """
    ranked = list(dict.fromkeys(w))
    ranked += sorted(set(vertices) - set(ranked) - {star})
    ranked.append(star)
    return Quiver({(ranked[b], ranked[a]): 2 for a in range(len(ranked)) for b in range(a + 1, len(ranked))})


@dataclass(frozen=True)
class Witness:
    quiver: Quiver
    vertex: int
    entry: int
    c_vector: CVector


def offdiag_witness(w: Sequence[int], star: int | None = None, vertices: Iterable[int] | None = None) -> Witness:
    """A quiver where mutating along ``w`` leaves a positive entry in the c-vector of ``star``.

    Defaults follow the standard setting: letters in ``1..n`` with ``n = max(w)``
    and ``star = n + 1``.  The reported vertex is the first letter of ``w``.
    """
    w = tuple(w)
    if not w:
        raise ValueError("the word must be nonempty")
    if not is_reduced(w):
        raise UnreducedWord(f"{w} has equal adjacent letters")
    n = max(w)
    star = n + 1 if star is None else star
    verts = range(1, n + 1) if vertices is None else vertices
    q = triangular_witness(w, star, verts)
    fq = mutate_framed_word(frame(q), w)
    c = c_vector(fq, star)
    entry = c[w[0]]
    assert entry > 0, f"c-vector {c} of {star} is not positive at {w[0]}"
    return Witness(q, w[0], entry, c)


def triangular_words(n: int, max_length: int) -> list[Word]:
    """Reduced words on ``1..n`` whose new letters appear in increasing order and use every letter.

    These are the strongly triangular words for ``qn_abundant(n)`` with ``n+1`` excluded.
    """
    out: list[Word] = []

    def grow(word: list[int], used: int) -> None:
        if used == n:
            out.append(tuple(word))
        if len(word) == max_length:
            return
        for x in range(1, min(used + 1, n) + 1):
            if word and word[-1] == x:
                continue
            grow(word + [x], max(used, x))

    grow([], 0)
    return out
