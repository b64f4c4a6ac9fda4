import random

import pytest

from helpers import random_quiver
from quivmut import Quiver, mutate, restrict
from quivmut.catalog import markov
from quivmut.errors import SpecConflict
from quivmut.fraisse import (
    GenericQuiver,
    Slot,
    agreement_profile,
    back_and_forth,
    is_partial_iso,
    realize_extension,
    steer_toward,
)


def test_forced_windows_are_seeded():
    a, b = GenericQuiver(4), GenericQuiver(4)
    a.force_window(6)
    b.force_window(6)
    assert a.committed == b.committed
    assert list(a.allocated()) == [1, 2, 3, 4, 5, 6]
    assert a.committed.max_weight() <= 2


def test_committed_counts_never_change():
    g = GenericQuiver(2)
    g.force_window(5)
    before = g.committed
    realize_extension(g, {1, 2}, [Slot({1: 3, 2: -1})], word=(3, 1))
    assert restrict(g.committed, range(1, 6)) == restrict(before, range(1, 6))


def test_extension_is_realized_in_the_mutated_frame():
    g = GenericQuiver(9)
    g.force_window(4)
    word = (2, 4, 1)
    (w,) = realize_extension(g, {1, 3}, [Slot({1: 2, 3: -1})], word)
    frame = g.frame(word)
    assert frame(w, 1) == 2 and frame(w, 3) == -1 and frame(w, 2) == 0 and frame(w, 4) == 0


def test_isolated_extension():
    g = GenericQuiver(0)
    g.force_window(4)
    (w,) = realize_extension(g, range(1, 5), [Slot()])
    assert g.committed.degree(w) == 0


def test_slots_may_reference_earlier_slots_only():
    g = GenericQuiver(0)
    g.force_window(2)
    a, b = realize_extension(g, {1}, [Slot({1: 1}), Slot({1: -1}, {0: 2})])
    assert g.committed(b, a) == 2
    with pytest.raises(SpecConflict):
        realize_extension(g, {1}, [Slot(to_new={0: 1})])
    with pytest.raises(SpecConflict):
        realize_extension(g, {1}, [Slot({7: 1})])
    with pytest.raises(SpecConflict):
        realize_extension(g, {99}, [Slot()])


def test_back_and_forth_stages():
    g = GenericQuiver(0)
    isos = back_and_forth(g, 3, 12)
    assert [p.stage for p in isos] == list(range(1, 13))
    assert isos[0].pairs == ((3, 3),)
    for small, big in zip(isos, isos[1:]):
        assert set(small.pairs) < set(big.pairs)
    k, mk = g.committed, mutate(g.committed, 3)
    assert all(is_partial_iso(k, mk, p.as_dict()) for p in isos)
    # the back steps cover the least missing vertices on both sides
    last = isos[-1]
    assert set(range(1, 4)) <= last.domain() and set(range(1, 4)) <= last.image()


def test_back_and_forth_is_deterministic():
    a = back_and_forth(GenericQuiver(5), 2, 8)
    b = back_and_forth(GenericQuiver(5), 2, 8)
    assert a == b


def test_steering_to_markov():
    g = GenericQuiver(2)
    s = steer_toward(g, markov(), 3)
    assert s.final == markov()
    assert [st.radius for st in s.stages] == [1, 2, 3]
    assert agreement_profile(g, s, markov())


def test_steering_with_nothing_to_fix():
    g = GenericQuiver(0)
    g.force_window(4)
    target = restrict(g.committed, range(1, 5))
    s = steer_toward(g, target, 4)
    assert all(st.case == "isolated" for st in s.stages) and len(s.word) == 4


def test_random_steering():
    rng = random.Random(51)
    for seed in range(3):
        target = random_quiver(rng, 5, 3)
        g = GenericQuiver(seed)
        s = steer_toward(g, target, 5)
        assert s.final.arrows() == restrict(target, range(1, 6)).arrows()
        assert agreement_profile(g, s, target)


def test_steering_json():
    g = GenericQuiver(1)
    data = steer_toward(g, Quiver({(1, 2): 3}), 2).to_json()
    assert data["final"] == {"arrows": [[1, 2, 3]]} and len(data["stages"]) == 2
