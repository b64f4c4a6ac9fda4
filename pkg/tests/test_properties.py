import random

import pytest

from helpers import encode_oracle, random_abundant_acyclic, random_quiver
from quivmut import Quiver, Verdict, mutate
from quivmut.catalog import a3_path, markov, three_cycle
from quivmut.encoding import fold, lf_decode, lf_encode, unfold
from quivmut.errors import AbundanceViolation, MalformedCode
from quivmut.framing import qn_abundant
from quivmut.isomorphism import embeds, is_isomorphic
from quivmut.properties import (
    Abundant,
    Acyclic,
    Connected,
    Finite,
    HasWeightIn,
    MutationAcyclicWithin,
    TameWithin,
    acyclic_order,
    avoids,
    check_property,
    fork_point,
    source_or_sink,
)


def test_markov_is_not_found_mutation_acyclic():
    assert check_property(markov(), MutationAcyclicWithin(6)) is Verdict.UNKNOWN


def test_three_cycle_acyclicity():
    assert check_property(three_cycle(), Acyclic()) is Verdict.NO
    assert check_property(mutate(three_cycle(), 2), Acyclic()) is Verdict.YES
    assert check_property(three_cycle(), MutationAcyclicWithin(1)) is Verdict.YES


def test_connectedness_ignores_isolated_vertices():
    assert check_property(Quiver(), Connected()) is Verdict.YES
    assert check_property(Quiver({(1, 2): 1}, isolated=(9,)), Connected()) is Verdict.YES
    assert check_property(Quiver({(1, 2): 1, (3, 4): 1}), Connected()) is Verdict.NO


def test_simple_verdicts():
    assert check_property(markov(), Finite()) is Verdict.YES
    assert check_property(markov(), Abundant()) is Verdict.YES
    assert check_property(a3_path(), Abundant()) is Verdict.NO
    assert check_property(markov(), HasWeightIn(frozenset({2}))) is Verdict.YES
    assert check_property(markov(), HasWeightIn(frozenset({3}))) is Verdict.NO


def test_tameness_budget():
    assert check_property(markov(), TameWithin(3)) is Verdict.UNKNOWN
    assert check_property(Quiver({(1, 2): 2, (2, 3): 2}), TameWithin(1)) is Verdict.NO
    assert check_property(Quiver({(1, 2): 1, (2, 3): 2}), TameWithin(0)) is Verdict.UNKNOWN


def test_avoids_counts_isolated_pattern_vertices():
    two_points = Quiver((), isolated=(1, 2))
    assert not avoids(markov(), [two_points])
    assert avoids(a3_path(), [markov()])


def test_isomorphism():
    assert is_isomorphic(markov(), mutate(markov(), 1)) is not None
    assert is_isomorphic(Quiver({(1, 2): 1, (2, 3): 1}), Quiver({(1, 2): 1, (3, 2): 1})) is None
    f = is_isomorphic(markov(), markov())
    assert f is not None and all(markov()(f[a], f[b]) == markov()(a, b) for a in f for b in f)


def test_embedding_is_full():
    assert embeds(Quiver({(1, 2): 1}), three_cycle()) is not None
    # a path on three vertices is not full inside a triangle
    assert embeds(a3_path(), three_cycle()) is None


def test_random_isomorphic_relabelings():
    rng = random.Random(3)
    for _ in range(40):
        q = random_quiver(rng, 6, 3)
        verts = sorted(q.support())
        perm = verts[:]
        rng.shuffle(perm)
        r = q.relabel(dict(zip(verts, perm)))
        f = is_isomorphic(q, r)
        assert f is not None
        assert all(r(f[a], f[b]) == q(a, b) for a in verts for b in verts)


def test_acyclic_order():
    for n in range(1, 6):
        assert acyclic_order(qn_abundant(n), range(1, n + 2)) == list(range(n + 1, 0, -1))
    assert acyclic_order(markov(), (1, 2, 3)) is None
    assert acyclic_order(Quiver({(2, 1): 3}), (1, 2)) == [2, 1]
    with pytest.raises(AbundanceViolation):
        acyclic_order(a3_path(), (1, 2, 3))


def test_fork_points():
    assert fork_point(markov()) is None
    assert fork_point(mutate(qn_abundant(3), 2)) == 2
    assert fork_point(qn_abundant(3)) is None


def test_fork_growth_on_random_instances():
    rng = random.Random(11)
    for _ in range(100):
        q = random_abundant_acyclic(rng, rng.randint(3, 5))
        inner = [x for x in q.support() if not source_or_sink(q, x)]
        k = rng.choice(inner)
        f = mutate(q, k)
        assert fork_point(f) == k and f.arrow_total() > q.arrow_total()
        for _ in range(3):
            k2 = rng.choice([x for x in f.support() if x != fork_point(f)])
            g = mutate(f, k2)
            assert fork_point(g) == k2 and g.arrow_total() > f.arrow_total()
            f = g


# -- encoding ----------------------------------------------------------------------


def test_zigzag_map():
    assert [fold(t) for t in (-2, -1, 0, 1, 2)] == [3, 1, 0, 2, 4]
    assert {fold(t) for t in range(-1000, 1001)} == set(range(0, 2001))
    assert all(unfold(fold(t)) == t for t in range(-1000, 1001))


def test_encoding_examples():
    assert lf_encode(Quiver(), 3) == [1, 1, 1]
    assert lf_encode(Quiver({(1, 2): 1}), 2) == [4, 1]
    assert lf_encode(Quiver({(2, 1): 1}), 1) == [2]


def test_encoding_matches_sympy_oracle():
    rng = random.Random(5)
    for _ in range(60):
        q = random_quiver(rng, 7, 3)
        n = max(q.vertices(), default=1)
        assert lf_encode(q, n) == encode_oracle(q, n)


def test_decode_rejects_bad_codes():
    with pytest.raises(MalformedCode):
        lf_decode([0])
    with pytest.raises(MalformedCode):
        lf_decode([7919 * 104729], max_offset=1000)
