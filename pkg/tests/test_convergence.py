import random

import pytest

from helpers import random_quiver
from quivmut import (
    IdentityRay,
    PairBlocks,
    Periodic,
    Prefix,
    Quiver,
    Repeat,
    ShiftedRay,
    TriangularPalindromes,
    Verdict,
    a_infinity,
    mutate_word,
    overfill,
    restrict,
)
from quivmut.catalog import markov
from quivmut.convergence import (
    STRONG,
    WEAK,
    Inconclusive,
    LFCase,
    OscillationWitness,
    StableSince,
    Trajectory,
    af_divergence_gadget,
    classify_af,
    classify_lf,
    lf_divergence_gadget,
    strong_certificate,
    weak_certificate,
)
from quivmut.errors import DescriptorExhausted, GadgetInapplicable, InsufficientSegments
from quivmut.linking import build_sequence_from_family


def test_trajectory_on_finite_quiver_matches_mutate_word():
    q = markov()
    t = Trajectory(q, Prefix((1, 2, 3, 1)))
    t.step(4)
    assert t.current == mutate_word(q, (1, 2, 3, 1))
    with pytest.raises(DescriptorExhausted):
        t.step()


def test_generator_views_grow_lazily():
    t = Trajectory(a_infinity(), IdentityRay())
    t.step(3)
    assert t.view(range(1, 6)) == Quiver({(1, 2): 1, (2, 3): 1, (4, 3): 1, (4, 5): 1})
    assert t.view({3}, STRONG) == Quiver({(2, 3): 1, (4, 3): 1})


def test_identity_ray_certificates():
    t = Trajectory(a_infinity(), IdentityRay())
    s = strong_certificate(t, range(1, 21), 30)
    w = weak_certificate(t, range(1, 21), 30)
    assert s.status == StableSince(21) and w.status == StableSince(20)
    start = a_infinity().window(40)
    assert s.limit == overfill(start, range(1, 21))
    assert w.limit == restrict(start, range(1, 21))


def test_shifted_ray_certificates():
    s = strong_certificate(Trajectory(a_infinity(), ShiftedRay(2)), {1}, 30)
    assert s.status == OscillationWitness(29, 30) and s.oscillating
    w = weak_certificate(Trajectory(a_infinity(), ShiftedRay(2)), range(1, 21), 30)
    assert w.status == StableSince(20)
    assert w.limit == Quiver({(k, k + 1): 1 for k in range(2, 20)}, isolated=(1,))


def test_repeat_oscillates_and_pair_blocks_return():
    c = strong_certificate(Trajectory(Quiver({(1, 2): 1}), Repeat(1)), {1, 2}, 10)
    assert isinstance(c.status, OscillationWitness)
    c = strong_certificate(Trajectory(markov(), PairBlocks()), {1, 2, 3}, 10)
    assert c.status == StableSince(6) and c.limit == markov()


def test_any_observed_change_is_reported():
    c = weak_certificate(Trajectory(a_infinity(), IdentityRay()), range(1, 21), 5)
    assert c.status == OscillationWitness(4, 5) and not c.stable


def test_pending_letter_makes_certificate_inconclusive():
    c = strong_certificate(Trajectory(a_infinity(), Prefix((3, 1))), {1}, 1)
    assert isinstance(c.status, Inconclusive)
    # once the word is used up the last change is final
    c = strong_certificate(Trajectory(a_infinity(), Prefix((3, 1))), {1}, 2)
    assert c.status == StableSince(2) and c.limit == Quiver({(2, 1): 1})


def test_certificate_json():
    c = weak_certificate(Trajectory(a_infinity(), ShiftedRay(2)), range(1, 6), 20)
    data = c.to_json()
    assert data["status"] == {"kind": "stable-since", "step": 5} and data["mode"] == WEAK


def test_random_finite_quivers_return_under_pair_blocks():
    rng = random.Random(41)
    for _ in range(30):
        q = random_quiver(rng, 6, 3)
        c = strong_certificate(Trajectory(q, PairBlocks()), q.support() or {1}, 2 * max(q.vertices(), default=1) + 4)
        assert c.stable and c.limit == overfill(q, q.support() or {1})


# -- classification ---------------------------------------------------------------


def test_lf_classification():
    assert classify_lf(PairBlocks()).case is LFCase.ALL_CONVERGE
    assert classify_lf(TriangularPalindromes()).case is LFCase.ALL_CONVERGE
    assert classify_lf(IdentityRay()).case is LFCase.BOTH_DENSE
    assert classify_lf(ShiftedRay(3)).case is LFCase.BOTH_DENSE
    for d in (Repeat(2), Periodic((1, 2))):
        r = classify_lf(d)
        assert r.case is LFCase.C_NOT_DENSE and r.d_dense is False


def test_af_classification():
    assert classify_af(Prefix((1, 2))).d_dense is Verdict.NO
    assert classify_af(IdentityRay()).c_dense is Verdict.YES
    assert classify_af(Repeat(3)).c_dense is Verdict.NO
    assert classify_af(Repeat(3)).d_dense is Verdict.YES


# -- gadgets --------------------------------------------------------------------------


def test_af_star_gadget():
    g = af_divergence_gadget(Quiver(), {1}, ShiftedRay(4), steps=50)
    assert g.branch == "star" and g.watched == {2, 3}
    assert len(g.change_steps) == 50


def test_af_gadget_keeps_markov_fixed():
    g = af_divergence_gadget(markov(), {1, 2, 3}, ShiftedRay(6), steps=50)
    assert restrict(g.quiver, {1, 2, 3}) == markov()
    t = Trajectory(g.quiver, ShiftedRay(6))
    for _ in range(60):
        t.step()
        assert restrict(t.current, {1, 2, 3}) == markov()


def test_af_easy_gadget():
    g = af_divergence_gadget(Quiver(), {1}, Repeat(5), steps=50)
    assert g.branch == "easy" and len(g.change_steps) == 50


def test_af_gadget_refuses_finite_sequences():
    with pytest.raises(GadgetInapplicable):
        af_divergence_gadget(Quiver(), {1}, Prefix((1, 2)))


def test_lf_gadget_on_identity_ray():
    g = lf_divergence_gadget(IdentityRay(), {1}, 5)
    assert g.anchor == 2 and g.anchor_counts == (2, 4, 8, 16, 32)
    assert g.segments == ((3,), (4,), (5,), (6,), (7,))


def test_lf_gadget_on_family_sequence():
    d = build_sequence_from_family([{1, 2}, {3, 4}])
    with pytest.raises(InsufficientSegments):
        lf_divergence_gadget(d, set(), 3, anchor=5)
    g = lf_divergence_gadget(d, set(), 2, anchor=5)
    assert g.anchor_counts == (6, 36)


def test_lf_gadget_refuses_repeats():
    with pytest.raises(GadgetInapplicable):
        lf_divergence_gadget(Repeat(1), {1}, 2)
