import itertools
import random

import pytest

from helpers import random_quiver
from quivmut import Quiver, mutate_word
from quivmut.errors import FrozenMutation, NotAbundantAcyclic, UnreducedWord
from quivmut.framing import (
    Color,
    FramedQuiver,
    c_vector,
    color,
    frame,
    is_strongly_triangular,
    is_triangular,
    mutate_framed,
    mutate_framed_word,
    offdiag_witness,
    qn_abundant,
    stabilized_c_vector,
    triangular_words,
)
from quivmut.properties import fork_point


def test_fresh_frame_is_all_green():
    fq = frame(Quiver({(1, 2): 1}))
    assert c_vector(fq, 1).values() == (1, 0)
    assert all(color(fq, x) is Color.GREEN for x in (1, 2))


def test_base_case_c_vectors():
    fq = mutate_framed(frame(Quiver({(2, 1): 2})), 1)
    assert c_vector(fq, 1).values() == (-1, 0)
    assert c_vector(fq, 2).values() == (2, 1)
    assert color(fq, 1) is Color.RED and color(fq, 2) is Color.GREEN


def test_q2_c_vector():
    fq = mutate_framed_word(frame(qn_abundant(2)), (1, 2))
    assert c_vector(fq, 3).values() == (6, 2, 1)


def test_stabilized_values():
    assert [stabilized_c_vector(n).values() for n in (1, 2, 3)] == [(2, 1), (6, 2, 1), (18, 6, 2, 1)]


def test_frozen_vertices_cannot_be_mutated():
    with pytest.raises(FrozenMutation):
        mutate_framed(frame(Quiver({(1, 2): 1})), 3)


def test_framed_json_round_trip():
    fq = mutate_framed_word(frame(Quiver({(1, 2): 1, (2, 3): 2})), (2, 1))
    again = FramedQuiver.from_json(fq.dumps())
    assert again == fq and again.mutable == {1, 2, 3}


def test_sign_coherence_on_random_trajectories():
    rng = random.Random(31)
    for _ in range(300):
        q = random_quiver(rng, 6, 3)
        verts = sorted(q.support())
        if not verts:
            continue
        fq = frame(q)
        for _ in range(rng.randint(1, 12)):
            fq = mutate_framed(fq, rng.choice(verts))
            for x in verts:
                color(fq, x)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_c_vector_stabilizes(n):
    want = stabilized_c_vector(n)
    q = qn_abundant(n)
    for w in triangular_words(n, n + 3):
        assert is_strongly_triangular(w, q, n + 1)
        assert c_vector(mutate_framed_word(frame(q), w), n + 1) == want


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_green_vertices_close_downwards(n):
    """Along the mutated quiver minus the last mutated vertex, an arrow into a green vertex starts at a green one."""
    q = qn_abundant(n)
    for w in triangular_words(n, n + 3):
        fq = mutate_framed_word(frame(q), w)
        cur = fq.mutable_part()
        rest = [x for x in q.support() if x != w[-1]]
        green = {x for x in rest if color(fq, x) is Color.GREEN}
        for a in rest:
            for b in rest:
                if cur(a, b) > 0 and b in green:
                    assert a in green


def test_triangularity():
    q = qn_abundant(3)
    assert is_triangular((1, 2, 3), q)
    assert is_triangular((1, 2, 1), q)
    assert not is_triangular((3, 1), q)
    assert is_strongly_triangular((1, 2, 3), q, 4)
    assert not is_strongly_triangular((1, 2), q, 4)
    with pytest.raises(UnreducedWord):
        is_triangular((1, 1), q)
    with pytest.raises(NotAbundantAcyclic):
        is_triangular((1,), Quiver({(1, 2): 1}))


def test_triangular_word_counts():
    # compare with brute force over all reduced words on 1..n
    for n in (1, 2, 3):
        q = qn_abundant(n)
        brute = set()
        for length in range(n, n + 4):
            for w in itertools.product(range(1, n + 1), repeat=length):
                if all(a != b for a, b in zip(w, w[1:])) and is_strongly_triangular(w, q, n + 1):
                    brute.add(w)
        assert set(triangular_words(n, n + 3)) == brute


def test_offdiag_witnesses():
    w = offdiag_witness((1,))
    assert w.quiver == Quiver({(2, 1): 2}) and w.vertex == 1 and w.entry == 2
    wit = offdiag_witness((2, 1))
    assert wit.quiver == Quiver({(1, 2): 2, (3, 1): 2, (3, 2): 2})
    assert wit.vertex == 2 and wit.entry == 6 and wit.c_vector.values() == (2, 6, 1)
    wit = offdiag_witness((1, 2, 1))
    assert wit.entry == 6 and wit.c_vector.values() == (6, 2, 1)
    assert fork_point(mutate_word(wit.quiver, (1, 2, 1))) == 1
    with pytest.raises(UnreducedWord):
        offdiag_witness((1, 1))
