"""Finite mutation words and their reduction.

Two reducers live here.  ``one_step_reduce`` works block by block: it deletes
every maximal constant run of even length and shrinks odd runs to a single
letter.  ``reduce_word`` cancels equal neighbours on a stack.  Both reach the
normal form of the word in the free product of copies of Z/2, and the block
version serves as the test oracle for the stack version.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import groupby

Word = tuple[int, ...]
OMEGA = math.inf


def as_word(letters: Iterable[int]) -> Word:
    w = tuple(letters)
    for x in w:
        if isinstance(x, bool) or not isinstance(x, int) or x <= 0:
            raise ValueError(f"letters must be positive integers, got {x!r}")
    return w


def blocks(w: Sequence[int]) -> list[tuple[int, int]]:
    """Maximal constant runs as ``(letter, length)`` pairs."""
    return [(x, sum(1 for _ in run)) for x, run in groupby(w)]


def one_step_reduce(w: Sequence[int]) -> Word:
    return tuple(x for x, n in blocks(w) if n % 2)


def reduce_word(w: Iterable[int]) -> Word:
    stack: list[int] = []
    for x in w:
        if stack and stack[-1] == x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def is_reduced(w: Sequence[int]) -> bool:
    return all(a != b for a, b in zip(w, w[1:]))


def block_fixed_point(w: Sequence[int]) -> Word:
    """Iterate the block reducer until nothing changes."""
    cur = tuple(w)
    while True:
        nxt = one_step_reduce(cur)
        if nxt == cur:
            return cur
        cur = nxt


@dataclass(frozen=True)
class ReductionTrace:
    """Stages ``R^0, R^1, ...`` up to the first repetition, with ranks.

    ``rank`` is :data:`OMEGA` when ``max_stages`` ran out before a stage
    repeated; the ranks are then lower bounds only.
    """

    stages: tuple[Word, ...]
    rank: float | int
    letter_ranks: dict[int, float | int] = field(default_factory=dict)

    @property
    def reduction(self) -> Word:
        return self.stages[-1]


def reduction_trace(w: Sequence[int], max_stages: int | None = None) -> ReductionTrace:
    stages = [tuple(w)]
    rank: float | int = OMEGA
    while max_stages is None or len(stages) <= max_stages:
        nxt = one_step_reduce(stages[-1])
        if nxt == stages[-1]:
            rank = len(stages) - 1
            break
        stages.append(nxt)
    counts = [Counter(s) for s in stages]
    letter_ranks: dict[int, float | int] = {}
    for x in counts[0]:
        final = counts[-1][x]
        m = len(stages) - 1
        while m > 0 and counts[m - 1][x] == final:
            m -= 1
        letter_ranks[x] = m if rank != OMEGA or m < len(stages) - 1 else OMEGA
    return ReductionTrace(tuple(stages), rank, letter_ranks)


def parse_word(text: str) -> Word:
    """Parse ``"1,1,2"`` (commas or whitespace); the empty string is the empty word."""
    parts = text.replace(",", " ").split()
    return as_word(int(p) for p in parts)
