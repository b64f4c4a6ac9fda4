"""Bounded exploration of mutation classes up to isomorphism.

Quivers are compared through a canonical form: relabel the vertices (declared
isolated ones included) to ``1..k`` so that the upper-triangular list of
counts is lexicographically least.  Only relabelings that sort vertices by an
isomorphism-invariant profile are tried, which keeps the search tiny at the
sizes this module is meant for.
"""

from __future__ import annotations

import itertools
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass

from .isomorphism import embeds
from .properties import Verdict
from .quiver import Quiver, mutate


def _profile(q: Quiver, x: int) -> tuple:
    return (q.degree(x), tuple(sorted(q.neighbors(x).values())))


def canonical_form(q: Quiver) -> Quiver:
    """The least relabelling of ``q`` onto ``1..k`` (``k`` counts declared isolated vertices too)."""
    verts = sorted(q.vertices())
    groups: dict[tuple, list[int]] = {}
    for x in verts:
        groups.setdefault(_profile(q, x), []).append(x)
    classes = [groups[k] for k in sorted(groups)]
    best: tuple | None = None
    best_order: tuple[int, ...] = ()
    for parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        order = tuple(itertools.chain.from_iterable(parts))
        vec = tuple(q(order[a], order[b]) for a in range(len(order)) for b in range(a + 1, len(order)))
        if best is None or vec < best:
            best, best_order = vec, order
    pos = {x: n for n, x in enumerate(best_order, 1)}
    return q.relabel(pos).with_isolated(pos[x] for x in verts if not q.degree(x))


@dataclass(frozen=True)
class MutationClassNode:
    representative: Quiver
    members: tuple[Quiver, ...]
    frontier_exhausted: bool
    weight_bound_hit: bool
    node_bound_hit: bool
    max_weight: int
    max_nodes: int

    @property
    def members_found(self) -> int:
        return len(self.members)

    def to_json(self) -> dict:
        return {
            "representative": self.representative.to_json(),
            "members_found": self.members_found,
            "members": [m.to_json() for m in self.members],
            "frontier_exhausted": self.frontier_exhausted,
            "weight_bound_hit": self.weight_bound_hit,
            "node_bound_hit": self.node_bound_hit,
            "bounds": {"max_weight": self.max_weight, "max_nodes": self.max_nodes},
        }


def explore_class(q: Quiver, max_weight: int = 4, max_nodes: int = 200) -> MutationClassNode:
    """Breadth-first search over single mutations, one node per isomorphism class."""
    start = canonical_form(q)
    seen = {start}
    order = [start]
    queue = deque([start])
    weight_hit = node_hit = False
    while queue and not node_hit:
        cur = queue.popleft()
        for x in sorted(cur.support()):
            r = mutate(cur, x)
            if r.max_weight() > max_weight:
                weight_hit = True
                continue
            c = canonical_form(r)
            if c in seen:
                continue
            if len(order) >= max_nodes:
                node_hit = True
                break
            seen.add(c)
            order.append(c)
            queue.append(c)
    rep = min(order, key=lambda m: m.dumps())
    members = tuple(sorted(order, key=lambda m: m.dumps()))
    exhausted = not queue and not weight_hit and not node_hit
    return MutationClassNode(rep, members, exhausted, weight_hit, node_hit, max_weight, max_nodes)


def class_embeds(p: Quiver, node: MutationClassNode) -> Verdict:
    """Whether ``p`` is a full subquiver of some member of the class, as far as the exploration knows."""
    if any(embeds(p, m) is not None for m in node.members):
        return Verdict.YES
    return Verdict.NO if node.frontier_exhausted else Verdict.UNKNOWN


ONE_VERTEX = Quiver((), isolated=(1,))


def strip_isolated(q: Quiver) -> Quiver:
    """Drop declared isolated vertices; an arrowless quiver becomes the one-vertex quiver."""
    if q.is_empty():
        return ONE_VERTEX
    return Quiver(q.arrows()) if q.isolated else q


@dataclass(frozen=True)
class OrderReport:
    checked: int
    consistent: int
    failures: tuple[tuple[Quiver, Quiver, str], ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "checked": self.checked,
            "consistent": self.consistent,
            "failures": [[a.to_json(), b.to_json(), why] for a, b, why in self.failures],
        }


def poset_order_check(
    samples: Iterable[tuple[Quiver, Quiver]], max_weight: int = 4, max_nodes: int = 60
) -> OrderReport:
    """For each pair with the first a full subquiver of the second, the stripped classes must not be ordered the wrong way."""
    checked = consistent = 0
    failures = []
    for small, big in samples:
        checked += 1
        if embeds(small, big) is None:
            failures.append((small, big, "not a full subquiver"))
            continue
        verdict = class_embeds(strip_isolated(small), explore_class(strip_isolated(big), max_weight, max_nodes))
        if verdict is Verdict.NO:
            failures.append((small, big, "class order violated"))
        else:
            consistent += 1
    return OrderReport(checked, consistent, tuple(failures))
