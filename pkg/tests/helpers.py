"""Random instance generators and independent oracles shared by the test files."""

from __future__ import annotations

import random

import sympy

from quivmut import Quiver


def random_quiver(rng: random.Random, max_vertices: int = 8, max_weight: int = 4, density: float = 0.6) -> Quiver:
    n = rng.randint(1, max_vertices)
    arrows = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if rng.random() < density:
                m = rng.randint(1, max_weight) * rng.choice((1, -1))
                arrows[(i, j)] = m
    return Quiver(arrows)


def random_word(rng: random.Random, max_length: int = 40, alphabet: int = 8) -> tuple[int, ...]:
    return tuple(rng.randint(1, alphabet) for _ in range(rng.randint(0, max_length)))


def random_reduced_word(rng: random.Random, length: int, alphabet: int) -> tuple[int, ...]:
    out: list[int] = []
    while len(out) < length:
        x = rng.randint(1, alphabet)
        if not out or out[-1] != x:
            out.append(x)
    return tuple(out)


def random_abundant_acyclic(rng: random.Random, n: int, max_weight: int = 4) -> Quiver:
    """Vertices ``1..n`` in a shuffled linear order; every pair gets 2..max_weight arrows along it."""
    order = list(range(1, n + 1))
    rng.shuffle(order)
    arrows = {}
    for a in range(n):
        for b in range(a + 1, n):
            arrows[(order[a], order[b])] = rng.randint(2, max_weight)
    return Quiver(arrows)


# -- oracles --------------------------------------------------------------------


def matrix_mutate(q: Quiver, k: int) -> Quiver:
    """Exchange-matrix formula on a dense matrix, written independently of the library's mutation."""
    verts = sorted(q.vertices() | {k})
    b = {(i, j): q(i, j) for i in verts for j in verts}
    out = {}
    for i in verts:
        for j in verts:
            if i == k or j == k:
                out[(i, j)] = -b[(i, j)]
            else:
                out[(i, j)] = b[(i, j)] + (abs(b[(i, k)]) * b[(k, j)] + b[(i, k)] * abs(b[(k, j)])) // 2
    return Quiver({(i, j): m for (i, j), m in out.items() if i < j and m})


def rewrite_reduce(w) -> tuple[int, ...]:
    """Delete the leftmost pair of equal neighbours until none is left."""
    w = list(w)
    k = 0
    while k < len(w) - 1:
        if w[k] == w[k + 1]:
            del w[k : k + 2]
            k = max(k - 1, 0)
        else:
            k += 1
    return tuple(w)


def encode_oracle(q: Quiver, n: int) -> list[int]:
    """Row codes built from sympy's prime function and the zigzag map."""

    def h(t: int) -> int:
        return 2 * t if t >= 0 else -2 * t - 1

    return [
        sympy.prod([sympy.prime(j - i) ** h(q(i, j)) for j in q.neighbors(i) if j > i]) if q.neighbors(i) else 1
        for i in range(1, n + 1)
    ]


def subsets(universe):
    universe = sorted(universe)
    for mask in range(1, 1 << len(universe)):
        yield frozenset(x for b, x in enumerate(universe) if mask >> b & 1)


def minimal_linked_brute(word, universe) -> set[frozenset[int]]:
    linked = {s for s in subsets(universe) if rewrite_reduce(x for x in word if x in s)}
    return {s for s in linked if not any(t < s for t in linked)}
