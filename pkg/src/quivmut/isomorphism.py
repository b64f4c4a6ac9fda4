"""Isomorphism and full-subquiver embedding search for small quivers.

Plain backtracking.  Vertices of the pattern are visited in an order that
keeps each new vertex adjacent to already-placed ones where possible, and
bijective searches additionally prune by each vertex's multiset of signed
arrow counts.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

from .quiver import Quiver


def _profile(q: Quiver, x: int) -> tuple[int, ...]:
    return tuple(sorted(q.neighbors(x).values()))


def _search_order(p: Quiver, vertices: Iterable[int]) -> list[int]:
    remaining = set(vertices)
    order: list[int] = []
    while remaining:
        placed = set(order)
        best = max(remaining, key=lambda x: (sum(1 for y in p.neighbors(x) if y in placed), p.degree(x), -x))
        order.append(best)
        remaining.remove(best)
    return order


def embeddings(
    p: Quiver,
    q: Quiver,
    *,
    source: Iterable[int] | None = None,
    target: Iterable[int] | None = None,
    bijective: bool = False,
) -> Iterator[dict[int, int]]:
    """Yield injective maps ``f`` with ``q(f(x), f(y)) == p(x, y)`` on ``source``.

    ``source`` and ``target`` default to the full vertex sets (support plus
    declared isolated vertices).  Zero counts must match too, so each map is
    an isomorphism onto a full subquiver.
    """
    src = sorted(p.vertices() if source is None else set(source))
    tgt = sorted(q.vertices() if target is None else set(target))
    if len(src) > len(tgt) or (bijective and len(src) != len(tgt)):
        return
    profile_ok = None
    if bijective:
        if sorted(_profile(p, x) for x in src) != sorted(_profile(q, y) for y in tgt):
            return
        profile_ok = {x: _profile(p, x) for x in src}
        tprof = {y: _profile(q, y) for y in tgt}
    order = _search_order(p, src)
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(k: int) -> Iterator[dict[int, int]]:
        if k == len(order):
            yield dict(mapping)
            return
        x = order[k]
        for y in tgt:
            if y in used or (profile_ok is not None and tprof[y] != profile_ok[x]):
                continue
            if all(q(mapping[z], y) == p(z, x) for z in order[:k]):
                mapping[x] = y
                used.add(y)
                yield from extend(k + 1)
                del mapping[x]
                used.discard(y)

    yield from extend(0)


def is_isomorphic(a: Quiver, b: Quiver) -> dict[int, int] | None:
    """A bijection between supports carrying ``a`` onto ``b``, or ``None``.

    Isolated vertices are ignored.
    """
    sa, sb = a.support(), b.support()
    if len(sa) != len(sb) or len(a) != len(b):
        return None
    return next(embeddings(a, b, source=sa, target=sb, bijective=True), None)


def embeds(p: Quiver, q: Quiver) -> dict[int, int] | None:
    """An embedding of ``p`` onto a full subquiver of ``q``, or ``None``.

    Both vertex sets include declared isolated vertices, so an isolated
    vertex of ``p`` must land on a vertex of ``q`` unconnected to the rest
    of the image.
    """
    return next(embeddings(p, q), None)
