"""Integer encoding of the rows of a quiver.

Row ``i`` of a window of size ``n`` becomes ``prod_k p_k ** h(Q(i, i + k))``
where ``p_k`` is the ``k``-th prime and ``h`` folds the integers onto the
nonnegative integers (``0, -1, 1, -2, 2, ...`` go to ``0, 1, 2, 3, 4, ...``).
"""

from __future__ import annotations

from collections.abc import Sequence

from sympy import sieve

from .errors import MalformedCode
from .quiver import Quiver

DEFAULT_MAX_OFFSET = 10_000


def fold(t: int) -> int:
    return 2 * t if t >= 0 else -2 * t - 1


def unfold(u: int) -> int:
    if u < 0:
        raise ValueError("unfold expects a nonnegative integer")
    return u // 2 if u % 2 == 0 else -(u + 1) // 2


def lf_encode(q: Quiver, n: int) -> list[int]:
    """Codes for rows ``1..n``; arrows towards smaller vertices are not part of a row."""
    if n < 1:
        raise ValueError("window size must be positive")
    out = []
    for i in range(1, n + 1):
        code = 1
        for j, m in q.neighbors(i).items():
            if j > i:
                code *= sieve[j - i] ** fold(m)
        out.append(code)
    return out


def lf_decode(codes: Sequence[int], max_offset: int = DEFAULT_MAX_OFFSET) -> Quiver:
    """Invert :func:`lf_encode` on its window.

    Factoring uses trial division by the first ``max_offset`` primes; an
    entry with a larger prime factor is rejected as out of range.
    """
    arrows = {}
    for i, code in enumerate(codes, start=1):
        if isinstance(code, bool) or not isinstance(code, int) or code < 1:
            raise MalformedCode(f"entry {i} is {code!r}; codes are positive integers")
        rest, k = code, 0
        while rest > 1:
            k += 1
            if k > max_offset:
                raise MalformedCode(f"entry {i} has a prime factor beyond offset {max_offset}")
            p, e = sieve[k], 0
            while rest % p == 0:
                rest //= p
                e += 1
            if e:
                arrows[(i, i + k)] = unfold(e)
    return Quiver(arrows)
