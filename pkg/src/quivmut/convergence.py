"""Trajectories of mutation sequences, stabilization certificates, classifiers and divergence gadgets.

A trajectory applies the letters of a descriptor one at a time.  The initial
quiver is either finite or a :class:`QuiverGenerator`; generators are
materialized lazily, far enough past every mutated letter that the stored
arrows are exact.

Certificates compare the restriction (weak mode) or the overfill (strong
mode) of a window along a run up to a horizon.  Observing no change is not
enough to claim a limit, so a ``StableSince`` verdict also needs a *freeze
justification*.  That is a proof, built from the occurrence oracle, that no
future mutation can change the window again.  It uses the following closure
argument.  Let ``F`` be the vertices that will still be mutated.  Any arrow
created in the future joins two vertices linked by a path whose interior lies
in ``F``.  So for a component ``C`` of ``F`` the vertices ``C ∪ N(C)`` form a
clique in an over-approximation of every future underlying graph.
"""

from __future__ import annotations

import enum
import itertools
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass, field

from .errors import (
    DescriptorExhausted,
    ExhaustedHorizon,
    GadgetInapplicable,
    InsufficientSegments,
    QuiverError,
)
from .framing import triangular_witness
from .linking import StreamReduction, normal_form_subset, stream_reduce, tail
from .properties import Verdict
from .quiver import Quiver, QuiverGenerator, glue, mutate, mutate_word, overfill, restrict
from .sequences import INFINITE, Induced, SequenceDescriptor
from .words import Word

WEAK = "weak"
STRONG = "strong"
_GROWTH = 32


class Trajectory:
    """A single-owner cursor over ``μ_{i_k} ∘ … ∘ μ_{i_1}(initial)``."""

    def __init__(self, initial: Quiver | QuiverGenerator, descriptor: SequenceDescriptor):
        self.initial = initial
        self.descriptor = descriptor
        self.cursor = 0
        self.seen: Counter[int] = Counter()
        self._letters = iter(descriptor.letters())
        if isinstance(initial, QuiverGenerator):
            self._gen: QuiverGenerator | None = initial
            self.extent = 0
            self.current = Quiver()
        else:
            self._gen = None
            self.current = initial
            self.extent = max(initial.vertices(), default=0)

    @property
    def bandwidth(self) -> int:
        return self._gen.bandwidth if self._gen else 0

    def _grow(self, m: int) -> None:
        if m <= self.extent:
            return
        if self._gen is None:
            self.extent = m
            return
        new = max(m, self.extent + _GROWTH)
        fresh = Quiver(list(self._gen.arrows_beyond(self.extent, new)))
        self.current = glue(self.current, fresh)
        self.extent = new

    def step(self, k: int = 1) -> "Trajectory":
        for _ in range(k):
            x = next(self._letters, None)
            if x is None:
                raise DescriptorExhausted(f"sequence ended after {self.cursor} letters")
            self._grow(x + self.bandwidth)
            self.current = mutate(self.current, x)
            self.cursor += 1
            self.seen[x] += 1
        return self

    def view(self, window: Iterable[int], mode: str = WEAK) -> Quiver:
        window = frozenset(window)
        self._grow(max(window, default=0) + self.bandwidth)
        return overfill(self.current, window) if mode == STRONG else restrict(self.current, window)

    # -- freeze justification ---------------------------------------------

    def _remaining(self, x: int) -> bool:
        try:
            return self.descriptor.count(x) - self.seen[x] > 0
        except QuiverError:
            return True

    def _letters_beyond_extent(self) -> bool:
        d = self.descriptor
        if d.length() is not None:
            rest = itertools.islice(d.letters(), self.cursor, None)
            return any(x > self.extent for x in rest)
        alphabet = d.alphabet()
        if alphabet is not None:
            return max(alphabet, default=0) > self.extent
        return True

    def frozen(self, window: Iterable[int], mode: str) -> bool:
        """Whether no future letter can change the window's restriction (or overfill)."""
        window = frozenset(window)
        self._grow(max(window, default=0) + self.bandwidth)
        M = self.extent
        beyond = -1  # stands for every vertex above the materialized extent
        graph: dict[int, set[int]] = {a: set(row) for a, row in self.current._adj.items()}
        if self._gen is not None:
            for y in range(max(1, M - self.bandwidth + 1), M + 1):
                if any(self._gen(y, z) for z in range(M + 1, y + self.bandwidth + 1)):
                    graph.setdefault(y, set()).add(beyond)
                    graph.setdefault(beyond, set()).add(y)
        future = {x for x in range(1, M + 1) if self._remaining(x)}
        if self._gen is not None and self._letters_beyond_extent():
            future.add(beyond)

        done: set[int] = set()
        for start in future:
            if start in done or start not in graph:
                continue
            comp, stack = {start}, [start]
            while stack:
                for y in graph[stack.pop()]:
                    if y in future and y not in comp:
                        comp.add(y)
                        stack.append(y)
            done |= comp
            closure = comp.union(*(graph[c] for c in comp))
            hit = closure & window
            for x in comp:
                if x in window:
                    others = hit - {x} if mode == WEAK else closure - {x}
                    if others:
                        return False
                elif len(hit) >= (2 if mode == WEAK else 1):
                    return False
        return True


# -- certificates ---------------------------------------------------------------


@dataclass(frozen=True)
class StableSince:
    step: int


@dataclass(frozen=True)
class OscillationWitness:
    first: int
    second: int


@dataclass(frozen=True)
class Inconclusive:
    horizon: int


Status = StableSince | OscillationWitness | Inconclusive


@dataclass(frozen=True)
class StabilizationCertificate:
    mode: str
    window: frozenset[int]
    status: Status
    horizon: int
    limit: Quiver | None = None
    views: tuple[Quiver, Quiver] | None = None

    @property
    def stable(self) -> bool:
        return isinstance(self.status, StableSince)

    @property
    def oscillating(self) -> bool:
        return isinstance(self.status, OscillationWitness)

    def to_json(self) -> dict:
        s = self.status
        out: dict = {"mode": self.mode, "window": sorted(self.window), "horizon": self.horizon}
        if isinstance(s, StableSince):
            out["status"] = {"kind": "stable-since", "step": s.step}
            out["limit"] = self.limit.to_json()
        elif isinstance(s, OscillationWitness):
            out["status"] = {"kind": "oscillation", "steps": [s.first, s.second]}
            out["differing"] = [v.to_json() for v in self.views]
        else:
            out["status"] = {"kind": "inconclusive", "horizon": s.horizon}
        return out


def _certify(t: Trajectory, window: Iterable[int], horizon: int, mode: str) -> StabilizationCertificate:
    window = frozenset(window)
    run = Trajectory(t.initial, t.descriptor)
    prev = run.view(window, mode)
    before = prev
    last_change = 0
    for k in range(1, horizon + 1):
        try:
            run.step()
        except DescriptorExhausted:
            break
        cur = run.view(window, mode)
        if cur != prev:
            last_change, before = k, prev
        prev = cur
    if run.frozen(window, mode):
        return StabilizationCertificate(mode, window, StableSince(last_change), run.cursor, limit=prev)
    if last_change:
        status = OscillationWitness(last_change - 1, last_change)
        return StabilizationCertificate(mode, window, status, run.cursor, views=(before, prev))
    return StabilizationCertificate(mode, window, Inconclusive(run.cursor), run.cursor)


def weak_certificate(t: Trajectory, window: Iterable[int], horizon: int) -> StabilizationCertificate:
    """Certify the restriction to ``window``; the run starts afresh from ``t.initial``."""
    return _certify(t, window, horizon, WEAK)


def strong_certificate(t: Trajectory, window: Iterable[int], horizon: int) -> StabilizationCertificate:
    """Certify the overfill of ``window``; the run starts afresh from ``t.initial``."""
    return _certify(t, window, horizon, STRONG)


# -- classification ------------------------------------------------------------------


class LFCase(str, enum.Enum):
    ALL_CONVERGE = "all-converge"
    BOTH_DENSE = "both-dense"
    C_NOT_DENSE = "c-not-dense"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class LFClassification:
    case: LFCase
    d_dense: bool | None
    infinite_letters: frozenset[int] | None
    reason: str
    stream: StreamReduction | None = None

    def to_json(self) -> dict:
        inf = self.infinite_letters
        out = {
            "case": self.case.value,
            "d_dense": self.d_dense,
            "infinite_letters": "infinitely many" if inf is None else sorted(inf),
            "reason": self.reason,
        }
        if self.stream is not None:
            out["certified_prefix"] = list(self.stream.frozen)
        return out


def classify_lf(d: SequenceDescriptor, horizon: int = 200) -> LFClassification:
    inf = d.infinite_letters()
    if inf is None:
        return LFClassification(LFCase.C_NOT_DENSE, True, None, "infinitely many letters repeat forever")
    if inf:
        rest = Induced(d, lambda x: x not in inf)
        if rest.length() is not None:
            return LFClassification(LFCase.C_NOT_DENSE, False, inf, "the remaining letters form a finite word")
        if rest.reduction_finite is False:
            return LFClassification(LFCase.C_NOT_DENSE, True, inf, "the remaining letters have infinite reduction")
        return LFClassification(LFCase.C_NOT_DENSE, None, inf, "reduction of the remaining letters is not certified")
    stream = stream_reduce(d, horizon)
    if d.reduction_finite is True:
        return LFClassification(LFCase.ALL_CONVERGE, False, inf, "finite reduction", stream)
    if d.reduction_finite is False and stream.frozen:
        return LFClassification(LFCase.BOTH_DENSE, True, inf, "infinite reduction", stream)
    return LFClassification(LFCase.INCONCLUSIVE, None, inf, "reduction not certified within the horizon", stream)


@dataclass(frozen=True)
class AFClassification:
    c_dense: Verdict
    d_dense: Verdict
    reason: str

    def to_json(self) -> dict:
        return {"c_dense": self.c_dense.value, "d_dense": self.d_dense.value, "reason": self.reason}


def classify_af(d: SequenceDescriptor) -> AFClassification:
    if d.length() is not None:
        return AFClassification(Verdict.YES, Verdict.NO, "a finite sequence converges everywhere")
    inf = d.infinite_letters()
    if inf is not None and not inf:
        return AFClassification(Verdict.YES, Verdict.YES, "no letter repeats forever")
    if d.alphabet() is not None:
        return AFClassification(Verdict.NO, Verdict.YES, "finitely many letters")
    return AFClassification(Verdict.UNKNOWN, Verdict.YES, "infinitely many letters, some repeating forever")


# -- divergence gadgets -------------------------------------------------------------


def _tail_start(d: SequenceDescriptor, letters: set[int], horizon: int) -> int:
    """Position after the last occurrence of any letter in ``letters``."""
    need = 0
    for x in letters:
        c = d.count(x)
        if c == INFINITE:
            raise GadgetInapplicable(f"letter {x} occurs infinitely often")
        need += c
    if need == 0:
        return 0
    got = 0
    for pos, x in enumerate(itertools.islice(d.letters(), horizon), 1):
        if x in letters:
            got += 1
            if got == need:
                return pos
    raise GadgetInapplicable(f"occurrences of {sorted(letters)} not exhausted within {horizon} letters")


@dataclass(frozen=True)
class AFGadget:
    quiver: Quiver
    branch: str
    protected: frozenset[int]
    watched: frozenset[int]
    tail_start: int
    change_steps: tuple[int, ...]
    horizon: int

    def to_json(self) -> dict:
        return {
            "kind": "af",
            "branch": self.branch,
            "quiver": self.quiver.to_json(),
            "protected": sorted(self.protected),
            "watched": sorted(self.watched),
            "tail_start": self.tail_start,
            "changes": len(self.change_steps),
            "horizon": self.horizon,
        }


def _watch(q: Quiver, base: Quiver, d: SequenceDescriptor, protected, watched, horizon):
    """Run ``d`` on ``q`` and on ``base`` side by side; return the steps where ``watched`` changed."""
    big, small = Trajectory(q, d), Trajectory(base, d)
    prev = restrict(q, watched)
    changes = []
    for k in range(1, horizon + 1):
        big.step()
        small.step()
        if restrict(big.current, protected) != restrict(small.current, protected):
            raise AssertionError(f"protected restriction drifted at step {k}")
        cur = restrict(big.current, watched)
        if cur != prev:
            changes.append(k)
        prev = cur
    return tuple(changes)


def af_divergence_gadget(
    q: Quiver, v: Iterable[int], d: SequenceDescriptor, *, steps: int = 50, horizon: int = 10_000
) -> AFGadget:
    """A quiver agreeing with ``q`` on ``v`` on which ``d`` diverges in the weak sense.

    If some letter repeats forever it is made non-isolated.  Otherwise a star
    with centre pair ``N+1, N+2`` (``N = max v``) is attached so every letter
    of the tail flips one arrow between the centre pair.  Only star vertices
    met within the checked run are materialized.
    """
    v = frozenset(v)
    if not q.support() <= v:
        raise GadgetInapplicable("the support of q must lie inside the protected window")
    inf = d.infinite_letters()
    if inf:
        i = min(inf)
        if q.degree(i):
            out = q
            watched = v
        else:
            j = max(v | {i} | q.support()) + 1
            out = glue(q, Quiver({(i, j): 1}))
            watched = v | {i, j}
        prefix = d.prefix(steps)
        if i not in prefix:
            raise GadgetInapplicable(f"letter {i} does not occur in the first {steps} letters")
        changes = _watch(out, q, d, v, watched, len(prefix))
        hits = tuple(k for k, x in enumerate(prefix, 1) if x == i)
        assert set(hits) <= set(changes), "a mutation at the repeated letter left the window unchanged"
        return AFGadget(out, "easy", v, watched, 0, changes, len(prefix))
    if inf is None:
        raise GadgetInapplicable("infinitely many letters repeat forever and none is named")
    if d.length() is not None:
        raise GadgetInapplicable("a finite sequence converges on every quiver")

    n = max(v, default=0)
    hub, sink = n + 1, n + 2
    start = _tail_start(d, set(range(1, n + 3)), horizon)
    run = d.prefix(start + steps)
    if len(run) < start + steps:
        raise GadgetInapplicable("sequence too short for the requested run")
    spokes = sorted({x for x in run if x > sink})
    star = Quiver({**{(hub, s): 1 for s in spokes}, **{(s, sink): 1 for s in spokes}})
    placed = mutate_word(star, reversed(run[:start]))
    out = glue(q, placed)
    watched = frozenset({hub, sink})
    changes = _watch(out, q, d, v, watched, start + steps)
    missing = set(range(start + 1, start + steps + 1)) - set(changes)
    assert not missing, f"centre pair did not change at steps {sorted(missing)}"
    return AFGadget(out, "star", v, watched, start, changes, start + steps)


@dataclass(frozen=True)
class LFGadget:
    quiver: Quiver
    anchor: int
    tail_start: int
    segments: tuple[Word, ...]
    junctions: tuple[int, ...]
    boundaries: tuple[int, ...]
    anchor_counts: tuple[int, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "kind": "lf",
            "quiver": self.quiver.to_json(),
            "anchor": self.anchor,
            "tail_start": self.tail_start,
            "segments": [list(s) for s in self.segments],
            "junctions": list(self.junctions),
            "boundaries": list(self.boundaries),
            "anchor_counts": self.anchor_counts,
        }


def lf_divergence_gadget(
    d: SequenceDescriptor,
    v: Iterable[int],
    segments: int,
    *,
    q: Quiver | None = None,
    anchor: int | None = None,
    horizon: int = 400,
) -> LFGadget:
    """Chain of c-vector witnesses pushing arrows into an anchor vertex, one segment at a time.

    ``segments`` is how many disjoint linked pieces of the tail to use.  The
    anchor defaults to ``max(v) + 1``; the tail starts after the last
    occurrence of every letter up to ``max(v)`` and of the anchor.
    """
    v = frozenset(v)
    q = Quiver() if q is None else q
    if not q.support() <= v:
        raise GadgetInapplicable("the support of q must lie inside the protected window")
    inf = d.infinite_letters()
    if inf is None or inf:
        raise GadgetInapplicable("some letter occurs infinitely often")
    n = max(v, default=0)
    anchor = n + 1 if anchor is None else anchor
    if anchor <= n:
        raise GadgetInapplicable("the anchor must exceed every protected vertex")
    start = _tail_start(d, set(range(1, n + 1)) | {anchor}, horizon)
    rest = tail(d, start)
    try:
        _, segs = normal_form_subset(rest, segments, horizon)
    except ExhaustedHorizon as exc:
        raise InsufficientSegments(str(exc)) from None
    window = rest.prefix(horizon)
    bounds = []
    for seg in segs:
        s = set(seg)
        bounds.append(start + max(p for p, x in enumerate(window, 1) if x in s))
    junctions = [seg[0] for seg in segs]
    fresh = max([*window, *d.prefix(start), anchor]) + 1
    stars = junctions[1:] + [fresh]
    parts = [Quiver({(junctions[0], anchor): 1})]
    parts += [triangular_witness(seg, star) for seg, star in zip(segs, stars)]
    gadget = glue(*parts)
    placed = mutate_word(gadget, reversed(d.prefix(start)))
    out = glue(q, placed)

    t = Trajectory(out, d)
    t.step(start)
    counts = []
    prev = overfill(t.current, {anchor})
    used: set[int] = {anchor}
    for b, star, seg in zip(bounds, stars, segs):
        t.step(b - t.cursor)
        used |= set(seg)
        cur = overfill(t.current, {anchor})
        m = t.current(star, anchor)
        assert cur != prev and m > 0 and cur.support() <= used | {star}, f"anchor check failed at step {b}"
        counts.append(m)
        prev = cur
    return LFGadget(out, anchor, start, tuple(segs), tuple(junctions), tuple(bounds), tuple(counts))
