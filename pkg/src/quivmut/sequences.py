"""Finitely described, possibly infinite, mutation sequences.

A descriptor yields its letters in order and answers occurrence queries:
``count(i)`` is the exact number of times ``i`` occurs, or ``math.inf``.
Registry generators also record analytic facts that cannot be observed from
a finite prefix, such as whether the reduction of the whole sequence is
finite.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter
from collections.abc import Callable, Iterable, Iterator
from typing import Any

from .errors import DescriptorExhausted, MalformedInput
from .words import Word, as_word

INFINITE = math.inf


class SequenceDescriptor:
    """Base class.  Subclasses implement :meth:`letters` and :meth:`count`."""

    #: whether the reduction of the whole sequence is finite; ``None`` if not known
    reduction_finite: bool | None = None

    def letters(self) -> Iterator[int]:
        raise NotImplementedError

    def count(self, i: int) -> float | int:
        raise NotImplementedError

    def length(self) -> int | None:
        """Number of letters, or ``None`` for an infinite sequence."""
        return None

    def alphabet(self) -> frozenset[int] | None:
        """Letters that occur at least once, when that set is finite and known."""
        return None

    def infinite_letters(self) -> frozenset[int] | None:
        """Letters with infinitely many occurrences; ``None`` if that set is infinite."""
        return frozenset()

    def prefix(self, n: int) -> Word:
        return tuple(itertools.islice(self.letters(), n))

    def letter_at(self, k: int) -> int:
        """The letter at 1-based position ``k``."""
        for x in itertools.islice(self.letters(), k - 1, k):
            return x
        raise DescriptorExhausted(f"sequence has fewer than {k} letters")

    def to_json(self) -> dict:
        raise MalformedInput(f"{type(self).__name__} has no wire format")

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"), sort_keys=True)


class Prefix(SequenceDescriptor):
    """A finite word."""

    reduction_finite = True

    def __init__(self, word: Iterable[int]):
        self.word = as_word(word)
        self._counts = Counter(self.word)

    def letters(self) -> Iterator[int]:
        return iter(self.word)

    def count(self, i: int) -> int:
        return self._counts[i]

    def length(self) -> int:
        return len(self.word)

    def alphabet(self) -> frozenset[int]:
        return frozenset(self._counts)

    def to_json(self) -> dict:
        return {"kind": "prefix", "word": list(self.word)}

    def __repr__(self) -> str:
        return f"Prefix({self.word})"


class Generator(SequenceDescriptor):
    """A registry entry: an infinite sequence given by a block rule."""

    id = ""

    def params(self) -> dict[str, Any]:
        return {}

    def blocks(self) -> Iterator[Word]:
        raise NotImplementedError

    def letters(self) -> Iterator[int]:
        for block in self.blocks():
            yield from block

    def to_json(self) -> dict:
        return {"kind": "generator", "id": self.id, "params": self.params()}

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.params().items())
        return f"{type(self).__name__}({args})"


class IdentityRay(Generator):
    """1, 2, 3, ...  Already reduced, so its reduction is infinite."""

    id = "identity_ray"
    reduction_finite = False

    def blocks(self):
        return ((n,) for n in itertools.count(1))

    def count(self, i):
        return 1 if i >= 1 else 0


class ShiftedRay(Generator):
    """k, k+1, k+2, ..."""

    id = "shifted_ray"
    reduction_finite = False

    def __init__(self, k: int):
        if k < 1:
            raise MalformedInput("shifted_ray needs k >= 1")
        self.k = k

    def params(self):
        return {"k": self.k}

    def blocks(self):
        return ((n,) for n in itertools.count(self.k))

    def count(self, i):
        return 1 if i >= self.k else 0


class PairBlocks(Generator):
    """1, 1, 2, 2, 3, 3, ...  Each block cancels, so the reduction is empty."""

    id = "pair_blocks"
    reduction_finite = True

    def blocks(self):
        return ((n, n) for n in itertools.count(1))

    def count(self, i):
        return 2 if i >= 1 else 0


def triangular(n: int) -> int:
    return n * (n + 1) // 2


class TriangularPalindromes(Generator):
    """Block ``n`` runs up through the ``n``-th stretch of integers and back down.

    The stretch is ``T(n-1)+1 .. T(n)`` with ``T`` the triangular numbers, so
    the sequence starts 1,1, 2,3,3,2, 4,5,6,6,5,4, ...  Every block is a
    palindrome of even length and the reduction is empty.
    """

    id = "triangular_palindromes"
    reduction_finite = True

    def blocks(self):
        for n in itertools.count(1):
            up = tuple(range(triangular(n - 1) + 1, triangular(n) + 1))
            yield up + up[::-1]

    def count(self, i):
        return 2 if i >= 1 else 0


class Repeat(Generator):
    """i, i, i, ..."""

    id = "repeat"
    reduction_finite = None

    def __init__(self, i: int):
        if i < 1:
            raise MalformedInput("repeat needs a positive letter")
        self.i = i

    def params(self):
        return {"i": self.i}

    def blocks(self):
        return itertools.repeat((self.i,))

    def count(self, i):
        return INFINITE if i == self.i else 0

    def alphabet(self):
        return frozenset({self.i})

    def infinite_letters(self):
        return frozenset({self.i})


class Periodic(Generator):
    """The word ``w`` repeated forever."""

    id = "periodic"
    reduction_finite = None

    def __init__(self, word: Iterable[int]):
        self.word = as_word(word)
        if not self.word:
            raise MalformedInput("periodic needs a nonempty word")

    def params(self):
        return {"word": list(self.word)}

    def blocks(self):
        return itertools.repeat(self.word)

    def count(self, i):
        return INFINITE if i in self.word else 0

    def alphabet(self):
        return frozenset(self.word)

    def infinite_letters(self):
        return frozenset(self.word)


# -- derived descriptors --------------------------------------------------------


class Induced(SequenceDescriptor):
    """The subsequence of letters lying in ``s`` (a finite set or a predicate)."""

    def __init__(self, base: SequenceDescriptor, s: Iterable[int] | Callable[[int], bool]):
        self.base = base
        if callable(s):
            self.members: frozenset[int] | None = None
            self._test = s
        else:
            self.members = frozenset(s)
            self._test = self.members.__contains__
        self._total = self._finite_total()
        self.reduction_finite = True if self._total is not None else None

    def _finite_total(self) -> int | None:
        if self.base.length() is not None:
            return sum(1 for x in self.base.letters() if self._test(x))
        pool = self.members if self.members is not None else self.base.alphabet()
        if pool is None:
            return None
        total = 0
        for x in pool:
            if self._test(x):
                c = self.base.count(x)
                if c == INFINITE:
                    return None
                total += c
        return total

    def letters(self) -> Iterator[int]:
        emitted = 0
        if self._total == 0:
            return
        for x in self.base.letters():
            if self._test(x):
                yield x
                emitted += 1
                if emitted == self._total:
                    return

    def count(self, i):
        return self.base.count(i) if self._test(i) else 0

    def length(self):
        return self._total

    def alphabet(self):
        if self.members is not None:
            return frozenset(x for x in self.members if self.base.count(x))
        pool = self.base.alphabet()
        return None if pool is None else frozenset(x for x in pool if self._test(x))

    def infinite_letters(self):
        inf = self.base.infinite_letters()
        if inf is None:
            return None if self.members is None else frozenset(x for x in self.members if self.base.count(x) == INFINITE)
        return frozenset(x for x in inf if self._test(x))

    def __repr__(self):
        what = sorted(self.members) if self.members is not None else "<predicate>"
        return f"Induced({self.base!r}, {what})"


class Drop(SequenceDescriptor):
    """The sequence with its first ``k`` letters removed."""

    def __init__(self, base: SequenceDescriptor, k: int):
        self.base = base
        self.k = k
        self._head = Counter(base.prefix(k))
        self.reduction_finite = base.reduction_finite

    def letters(self):
        return itertools.islice(self.base.letters(), self.k, None)

    def count(self, i):
        return self.base.count(i) - self._head[i]

    def length(self):
        n = self.base.length()
        return None if n is None else max(0, n - self.k)

    def alphabet(self):
        pool = self.base.alphabet()
        return None if pool is None else frozenset(x for x in pool if self.count(x))

    def infinite_letters(self):
        return self.base.infinite_letters()

    def __repr__(self):
        return f"Drop({self.base!r}, {self.k})"


def induced_subsequence(d: SequenceDescriptor, s) -> SequenceDescriptor:
    return Induced(d, s)


# -- registry and wire format ---------------------------------------------------


def _family_concat(sets: list[list[int]]) -> SequenceDescriptor:
    from .linking import build_sequence_from_family

    return build_sequence_from_family([frozenset(s) for s in sets])


REGISTRY: dict[str, Callable[..., SequenceDescriptor]] = {
    "identity_ray": IdentityRay,
    "shifted_ray": ShiftedRay,
    "pair_blocks": PairBlocks,
    "triangular_palindromes": TriangularPalindromes,
    "repeat": Repeat,
    "periodic": Periodic,
    "family_concat": _family_concat,
}


def descriptor_from_json(data: dict | str) -> SequenceDescriptor:
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict):
        raise MalformedInput("descriptor JSON must be an object")
    kind = data.get("kind")
    if kind == "prefix":
        return Prefix(data.get("word", []))
    if kind == "generator":
        name = data.get("id")
        if name not in REGISTRY:
            raise MalformedInput(f"unknown generator {name!r}; known: {sorted(REGISTRY)}")
        try:
            return REGISTRY[name](**data.get("params", {}))
        except TypeError as exc:
            raise MalformedInput(f"bad parameters for {name}: {exc}") from None
    raise MalformedInput(f"unknown descriptor kind {kind!r}")
