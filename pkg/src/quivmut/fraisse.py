"""A lazily built generic quiver, extension realization, back-and-forth isomorphisms and steering.

The generic quiver is never materialized.  ``GenericQuiver.committed`` is the
finite fragment decided so far; every pair of allocated vertices has a fixed
count (zero unless something said otherwise) that never changes.  Windows
forced by the caller get seeded random counts.  Extensions requested through
:func:`realize_extension` get exactly the requested counts, because the
generic quiver realizes every finite one-point extension.

Extensions may be described in a mutated frame ``μ_word(committed)``.  The
fresh vertex is placed in that frame and the committed counts are recovered by
mutating back along the reversed word.  Adding a vertex never alters the
counts among older vertices along any mutation sequence of older vertices, so
this is consistent with everything committed before.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from .errors import SpecConflict
from .isomorphism import is_isomorphic
from .quiver import Quiver, QuiverGenerator, glue, mutate, mutate_word, restrict
from .words import Word

DEFAULT_WEIGHT = 2


class GenericQuiver:
    def __init__(self, seed: int = 0, weight: int = DEFAULT_WEIGHT):
        self.committed = Quiver()
        self.next_fresh = 1
        self.rng_seed = seed
        self._rng = random.Random(seed)
        self._weight = weight

    def allocated(self) -> range:
        return range(1, self.next_fresh)

    def force_window(self, n: int) -> None:
        """Allocate every vertex up to ``n``, drawing counts to earlier vertices from the seeded RNG."""
        arrows = {}
        for j in range(self.next_fresh, n + 1):
            for i in range(1, j):
                m = self._rng.randint(-self._weight, self._weight)
                if m:
                    arrows[(i, j)] = m
        if arrows:
            self.committed = glue(self.committed, Quiver(arrows))
        self.next_fresh = max(self.next_fresh, n + 1)

    def frame(self, word: Sequence[int] = ()) -> Quiver:
        return mutate_word(self.committed, word)


@dataclass(frozen=True)
class Slot:
    """A new vertex: counts ``Q(new, b)`` to base vertices and to earlier slots (by index)."""

    to_base: Mapping[int, int] = field(default_factory=dict)
    to_new: Mapping[int, int] = field(default_factory=dict)


def realize_extension(
    g: GenericQuiver, base: Iterable[int], spec: Sequence[Slot], word: Sequence[int] = ()
) -> list[int]:
    """Allocate fresh vertices realizing ``spec`` over ``base`` in the frame ``μ_word(committed)``.

    Counts to allocated vertices outside ``base`` are zero in that frame.
    """
    base = frozenset(base)
    allocated = set(g.allocated())
    if not base <= allocated:
        raise SpecConflict(f"base vertices {sorted(base - allocated)} are not allocated")
    if not set(word) <= allocated:
        raise SpecConflict("the frame word mutates unallocated vertices")
    fresh = list(range(g.next_fresh, g.next_fresh + len(spec)))
    arrows: dict[tuple[int, int], int] = {}
    for r, slot in enumerate(spec):
        for b, m in slot.to_base.items():
            if b not in base:
                raise SpecConflict(f"slot {r} points at {b}, which is not in the base")
            if m:
                arrows[(fresh[r], b)] = m
        for s, m in slot.to_new.items():
            if not 0 <= s < r:
                raise SpecConflict(f"slot {r} may only refer to earlier slots, not {s}")
            if m:
                arrows[(fresh[r], fresh[s])] = m
    in_frame = glue(g.frame(word), Quiver(arrows))
    g.committed = mutate_word(in_frame, reversed(tuple(word)))
    g.next_fresh += len(spec)
    return fresh


# -- back and forth ---------------------------------------------------------------


@dataclass(frozen=True)
class PartialIso:
    pairs: tuple[tuple[int, int], ...]
    stage: int

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def domain(self) -> frozenset[int]:
        return frozenset(a for a, _ in self.pairs)

    def image(self) -> frozenset[int]:
        return frozenset(b for _, b in self.pairs)

    def to_json(self) -> dict:
        return {"stage": self.stage, "pairs": [list(p) for p in self.pairs]}


def is_partial_iso(k: Quiver, mk: Quiver, f: Mapping[int, int]) -> bool:
    items = list(f.items())
    return all(k(a, x) == mk(b, y) for n, (a, b) in enumerate(items) for x, y in items[n + 1:])


def _least_outside(used: Iterable[int]) -> int:
    used = set(used)
    n = 1
    while n in used:
        n += 1
    return n


def back_and_forth(g: GenericQuiver, i: int, n: int, *, check_iso_up_to: int = 8) -> list[PartialIso]:
    """Nested partial isomorphisms from the generic quiver to its mutation at ``i``.

    Even stages add the least vertex missing from the image, odd stages the
    least vertex missing from the domain; the partner is a fresh vertex
    realized through the extension property.
    """
    if n < 1:
        raise ValueError("need at least one stage")
    g.force_window(i)
    f = {i: i}
    out = [PartialIso(((i, i),), 1)]
    for stage in range(2, n + 1):
        if stage % 2 == 0:
            b = _least_outside(f.values())
            g.force_window(b)
            mk = mutate(g.committed, i)
            (a,) = realize_extension(g, f.keys(), [Slot({x: mk(b, y) for x, y in f.items()})])
        else:
            a = _least_outside(f.keys())
            g.force_window(a)
            k = g.committed
            (b,) = realize_extension(g, f.values(), [Slot({y: k(a, x) for x, y in f.items()})], word=(i,))
        f[a] = b
        k, mk = g.committed, mutate(g.committed, i)
        assert is_partial_iso(k, mk, f), f"stage {stage} is not an isomorphism"
        if stage <= check_iso_up_to:
            left = restrict(k, f.keys()).with_isolated(())
            right = restrict(mk, f.values()).with_isolated(())
            assert is_isomorphic(left, right) is not None, f"stage {stage} fails the isomorphism search"
        out.append(PartialIso(tuple(sorted(f.items())), stage))
    return out


# -- steering -------------------------------------------------------------------------


@dataclass(frozen=True)
class Stage:
    radius: int
    case: str
    appended: Word
    length: int


@dataclass(frozen=True)
class Steering:
    word: Word
    stages: tuple[Stage, ...]
    final: Quiver

    def to_json(self) -> dict:
        return {
            "word": list(self.word),
            "stages": [
                {"radius": s.radius, "case": s.case, "appended": list(s.appended), "length": s.length}
                for s in self.stages
            ],
            "final": self.final.to_json(),
        }


def _target_window(target: Quiver | QuiverGenerator, n: int) -> Quiver:
    if isinstance(target, QuiverGenerator):
        return target.window(n)
    return restrict(target, range(1, n + 1))


def steer_toward(g: GenericQuiver, target: Quiver | QuiverGenerator, n: int) -> Steering:
    """A word whose mutations bring the generic quiver to agree with ``target`` on ``[1..n]``.

    Stage ``m`` (for ``m = 1..n``) leaves ``[1..m]`` in agreement from then on.
    Either nothing needs fixing and one isolated fresh vertex is mutated, or
    for each wrong count ``(v, m)`` a fresh vertex ``w`` with ``v -> w`` (or
    ``w -> v``) and the missing difference towards ``m`` is mutated.
    """
    if n < 1:
        raise ValueError("the radius must be positive")
    g.force_window(n)
    word: list[int] = []
    stages = []
    for m in range(1, n + 1):
        want = _target_window(target, m)
        cur = g.frame(word)
        wrong = [(v, want(v, m) - cur(v, m)) for v in range(1, m) if want(v, m) != cur(v, m)]
        if not wrong:
            (w,) = realize_extension(g, range(1, m + 1), [Slot()], word)
            added: tuple[int, ...] = (w,)
            case = "isolated"
        else:
            slots = [Slot({v: (-1 if delta > 0 else 1), m: delta}) for v, delta in wrong]
            added = tuple(realize_extension(g, range(1, m + 1), slots, word))
            case = "correction"
            cur = g.frame(word)
            for (v, delta), w in zip(wrong, added):
                after = mutate(cur, w)
                assert after(v, m) == want(v, m), f"correction at {w} missed ({v}, {m})"
        word.extend(added)
        stages.append(Stage(m, case, added, len(word)))
    final = restrict(g.frame(word), range(1, n + 1))
    assert final.arrows() == _target_window(target, n).arrows(), "steering did not reach the target"
    return Steering(tuple(word), tuple(stages), final)


def agreement_profile(g: GenericQuiver, steering: Steering, target: Quiver | QuiverGenerator) -> bool:
    """Whether, after each stage completes, every longer prefix keeps that stage's window equal to the target."""
    cur = g.committed
    history = [cur]
    for x in steering.word:
        cur = mutate(cur, x)
        history.append(cur)
    for s in steering.stages:
        want = _target_window(target, s.radius).arrows()
        if any(restrict(h, range(1, s.radius + 1)).arrows() != want for h in history[s.length:]):
            return False
    return True
