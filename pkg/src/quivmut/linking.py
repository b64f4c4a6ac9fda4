"""Linked sets of an (infinite) mutation sequence.

A finite vertex set ``S`` is linked when the subsequence of letters in ``S``
does not reduce to the empty word.  This module reduces infinite streams
with certified prefixes, finds minimal linked sets through convex hulls,
builds irreducible words, and strings them together into a sequence whose
minimal linked sets are a prescribed antichain.
"""

from __future__ import annotations

import itertools
from collections import Counter
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass

from .errors import (
    ExhaustedHorizon,
    HorizonTooSmall,
    HullTooLarge,
    InfiniteMembership,
    InfiniteOccurrence,
    LetterCollision,
    NotAntichain,
    UnreducedWord,
)
from .properties import Verdict
from .sequences import INFINITE, Drop, Induced, SequenceDescriptor
from .words import Word, is_reduced, reduce_word

DEFAULT_HULL_CAP = 20


# -- streaming reduction --------------------------------------------------------


@dataclass(frozen=True)
class StreamReduction:
    frozen: Word
    certified_length: int
    live_suffix: Word
    consumed: int
    exhausted: bool


def stream_reduce(d: SequenceDescriptor, horizon: int) -> StreamReduction:
    """Stack-reduce the first ``horizon`` letters and certify a prefix of the limit.

    A stack entry can only be cancelled by a later copy of its letter arriving
    while it is on top.  Once a letter has no occurrences left, its entry and
    everything beneath it are final.
    """
    inf = d.infinite_letters()
    if inf is None or inf:
        raise InfiniteOccurrence(f"letters {sorted(inf) if inf else '(infinitely many)'} occur infinitely often")
    stack: list[int] = []
    seen: Counter[int] = Counter()
    consumed = 0
    for x in itertools.islice(d.letters(), horizon):
        consumed += 1
        seen[x] += 1
        if stack and stack[-1] == x:
            stack.pop()
        else:
            stack.append(x)
    total = d.length()
    exhausted = total is not None and consumed >= total
    if exhausted:
        cut = len(stack)
    else:
        cut = 0
        for pos in range(len(stack) - 1, -1, -1):
            if d.count(stack[pos]) - seen[stack[pos]] == 0:
                cut = pos + 1
                break
    return StreamReduction(tuple(stack[:cut]), cut, tuple(stack[cut:]), consumed, exhausted)


def all_occurrences(d: SequenceDescriptor, letters: Iterable[int]) -> Word:
    """The full (finite) subsequence of ``d`` on a finite set of finitely occurring letters."""
    s = frozenset(letters)
    for x in s:
        if d.count(x) == INFINITE:
            raise InfiniteOccurrence(f"letter {x} occurs infinitely often")
    return tuple(Induced(d, s).letters())


# -- hulls and linked sets --------------------------------------------------------


def convex_hull(d: SequenceDescriptor, i: int, horizon: int) -> frozenset[int]:
    """Letters between the first and the last occurrence of ``i`` (inclusive)."""
    want = d.count(i)
    if want == INFINITE:
        raise InfiniteOccurrence(f"letter {i} occurs infinitely often")
    if want == 0:
        return frozenset()
    hull: set[int] = set()
    pending: list[int] = []
    found = 0
    for x in itertools.islice(d.letters(), horizon):
        if found:
            pending.append(x)
        if x == i:
            if not found:
                pending.append(x)
            found += 1
            hull.update(pending)
            pending.clear()
            if found == want:
                return frozenset(hull)
    raise HorizonTooSmall(f"only {found} of {want} occurrences of {i} within {horizon} letters")


def is_linked(d: SequenceDescriptor, s: Iterable[int] | Callable[[int], bool], horizon: int) -> Verdict:
    if not callable(s):
        s = frozenset(s)
        if not s:
            return Verdict.NO
    r = stream_reduce(Induced(d, s), horizon)
    if r.frozen:
        return Verdict.YES
    if r.exhausted:
        return Verdict.NO
    return Verdict.UNKNOWN


def _linked_word(word: Sequence[int], s: frozenset[int]) -> bool:
    return bool(reduce_word(x for x in word if x in s))


def minimal_linked_supersets(
    d: SequenceDescriptor, i: int, horizon: int, cap: int = DEFAULT_HULL_CAP
) -> list[frozenset[int]]:
    """Inclusion-minimal linked sets containing ``i``, searched inside the convex hull of ``i``."""
    hull = convex_hull(d, i, horizon)
    if not hull:
        return []
    if len(hull) > cap:
        raise HullTooLarge(f"hull of {i} has {len(hull)} letters (cap {cap})")
    word = all_occurrences(d, hull)
    others = sorted(hull - {i})
    found: list[frozenset[int]] = []
    for size in range(len(others) + 1):
        for extra in itertools.combinations(others, size):
            cand = frozenset((i, *extra))
            if any(f <= cand for f in found):
                continue
            if _linked_word(word, cand):
                found.append(cand)
    assert all(f <= hull for f in found)
    return found


def minimal_linked_sets(word: Sequence[int], universe: Iterable[int] | None = None) -> list[frozenset[int]]:
    """All inclusion-minimal linked subsets of ``universe`` for a finite word (brute force)."""
    verts = sorted(set(word) if universe is None else set(universe))
    found: list[frozenset[int]] = []
    for size in range(1, len(verts) + 1):
        for combo in itertools.combinations(verts, size):
            cand = frozenset(combo)
            if not any(f <= cand for f in found) and _linked_word(word, cand):
                found.append(cand)
    return found


# -- irreducible words ---------------------------------------------------------------


def is_irreducible(w: Sequence[int]) -> bool:
    if not w or not is_reduced(w):
        return False
    return all(not reduce_word(x for x in w if x != j) for j in set(w))


def extend_irreducible(w: Sequence[int], i: int) -> Word:
    """``(w, i, reversed w, i)``, which is irreducible whenever ``w`` is and ``i`` is new."""
    if i in w:
        raise LetterCollision(f"letter {i} already occurs")
    out = (*w, i, *reversed(w), i)
    assert is_irreducible(out)
    return out


def irreducible_word(s: Iterable[int]) -> Word:
    """An irreducible word on exactly the letters of ``s``, inserted in increasing order."""
    letters = sorted(set(s))
    if not letters:
        raise ValueError("the empty set has no irreducible word")
    w: Word = (letters[0],)
    for x in letters[1:]:
        w = extend_irreducible(w, x)
    return w


# -- sequences from antichains -----------------------------------------------------------


class SetFamily:
    """An infinite family ``S_1, S_2, ...`` of finite sets.

    ``sets(n)`` returns ``S_n``; ``last_index(i)`` bounds the indices of sets
    containing ``i``, which is what makes every occurrence count finite.
    """

    def __init__(self, sets: Callable[[int], Iterable[int]], last_index: Callable[[int], int]):
        self._sets = sets
        self.last_index = last_index

    def __getitem__(self, n: int) -> frozenset[int]:
        return frozenset(self._sets(n))

    def __iter__(self) -> Iterator[frozenset[int]]:
        return (self[n] for n in itertools.count(1))


def _check_new_member(earlier: Sequence[frozenset[int]], a: frozenset[int]) -> None:
    if not a:
        raise NotAntichain("the empty set can never be linked")
    for b in earlier:
        if a <= b or b <= a:
            raise NotAntichain(f"{sorted(a)} and {sorted(b)} are comparable")


def _schedule(words: Iterator[Word], finite: bool) -> Iterator[Word]:
    """Concatenation order that never puts equal letters side by side.

    Each step takes the earliest waiting word whose first letter differs from
    the current last letter.  A finite family can run out of such words; the
    reversal of a waiting word is then used instead (it starts with a different letter).
    """
    waiting: list[Word] = []
    last = None
    source = iter(words)
    done = False
    while True:
        pick = next((k for k, w in enumerate(waiting) if w[0] != last), None)
        while pick is None and not done:
            nxt = next(source, None)
            if nxt is None:
                done = True
                break
            waiting.append(nxt)
            if nxt[0] != last:
                pick = len(waiting) - 1
        if pick is None:
            if not waiting:
                return
            assert finite
            word = waiting.pop(0)[::-1]
        else:
            word = waiting.pop(pick)
        assert word[0] != last
        last = word[-1]
        yield word


class FamilyConcat(SequenceDescriptor):
    """Irreducible words of an antichain of finite sets, strung together without collisions."""

    reduction_finite = None

    def __init__(self, family: Sequence[frozenset[int]] | SetFamily):
        if isinstance(family, SetFamily):
            self.family = family
            self.finite = False
            self._word = None
        else:
            sets = [frozenset(s) for s in family]
            for k, a in enumerate(sets):
                _check_new_member(sets[:k], a)
            self.family = sets
            self.finite = True
            self._word = tuple(x for w in _schedule(iter(map(irreducible_word, sets)), True) for x in w)
            self.reduction_finite = True

    def _infinite_words(self) -> Iterator[Word]:
        seen: list[frozenset[int]] = []
        for s in self.family:
            _check_new_member(seen, s)
            seen.append(s)
            yield irreducible_word(s)

    def letters(self) -> Iterator[int]:
        if self._word is not None:
            return iter(self._word)
        return (x for w in _schedule(self._infinite_words(), False) for x in w)

    def count(self, i: int) -> int:
        if self._word is not None:
            return self._word.count(i)
        try:
            last = self.family.last_index(i)
        except Exception as exc:  # the caller's bound function rejected the vertex
            raise InfiniteMembership(f"no membership bound for vertex {i}: {exc}") from None
        return sum(irreducible_word(s).count(i) for s in (self.family[n] for n in range(1, last + 1)) if i in s)

    def length(self) -> int | None:
        return None if self._word is None else len(self._word)

    def alphabet(self) -> frozenset[int] | None:
        return None if self._word is None else frozenset(self._word)

    def to_json(self) -> dict:
        if not self.finite:
            return super().to_json()
        return {"kind": "generator", "id": "family_concat", "params": {"sets": [sorted(s) for s in self.family]}}

    def __repr__(self) -> str:
        if self.finite:
            return f"FamilyConcat({[sorted(s) for s in self.family]})"
        return "FamilyConcat(<infinite family>)"


def build_sequence_from_family(family: Sequence[Iterable[int]] | SetFamily) -> FamilyConcat:
    """A reduced sequence whose minimal linked sets are exactly the given antichain.

    Pass a finite collection, or a :class:`SetFamily` for an infinite one.
    """
    if isinstance(family, SetFamily):
        return FamilyConcat(family)
    return FamilyConcat([frozenset(s) for s in family])


# -- normal form -----------------------------------------------------------------


def normal_form_subset(
    d: SequenceDescriptor, count: int, horizon: int, cap: int = DEFAULT_HULL_CAP
) -> tuple[frozenset[int], list[Word]]:
    """Pick ``count`` disjoint minimal linked sets, each starting after the previous one ends.

    Greedy from the left: scanning letters in order, the first letter that
    lies in some minimal linked set occurring wholly after the cursor wins;
    among its candidate sets the one that finishes earliest is taken.
    Returns the union of the chosen sets and the reduced segments on them.
    """
    window = d.prefix(horizon)
    if not is_reduced(window):
        raise UnreducedWord("sequence is not reduced within the horizon")
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    for pos, x in enumerate(window):
        first.setdefault(x, pos)
        last[x] = pos
    complete = {x for x in first if d.count(x) == window.count(x)}

    chosen: list[frozenset[int]] = []
    cursor = 0
    pos = 0
    while len(chosen) < count and pos < len(window):
        x = window[pos]
        pos += 1
        if first[x] < cursor or x not in complete:
            continue
        try:
            cands = minimal_linked_supersets(d, x, horizon, cap)
        except (HorizonTooSmall, HullTooLarge):
            continue
        good = [s for s in cands if all(y in complete and first[y] >= cursor for y in s)]
        if not good:
            continue
        best = min(good, key=lambda s: (max(last[y] for y in s), sorted(s)))
        chosen.append(best)
        cursor = max(last[y] for y in best) + 1
        pos = cursor
    if len(chosen) < count:
        raise ExhaustedHorizon(f"found {len(chosen)} of {count} disjoint minimal linked sets")
    segments = [reduce_word(y for y in window if y in s) for s in chosen]
    assert all(segments) and all(set(seg) == s for seg, s in zip(segments, chosen))
    return frozenset().union(*chosen), segments


def tail(d: SequenceDescriptor, k: int) -> SequenceDescriptor:
    """The sequence after its first ``k`` letters."""
    return Drop(d, k)
