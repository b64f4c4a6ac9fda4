import random

from helpers import random_quiver
from quivmut import Quiver, Verdict, mutate
from quivmut.catalog import a3_path, markov, three_cycle
from quivmut.isomorphism import is_isomorphic
from quivmut.mutclass import (
    ONE_VERTEX,
    canonical_form,
    class_embeds,
    explore_class,
    poset_order_check,
    strip_isolated,
)


def test_canonical_form_identifies_isomorphic_quivers():
    rng = random.Random(61)
    for _ in range(60):
        q = random_quiver(rng, 5, 3)
        verts = sorted(q.vertices())
        perm = verts[:]
        rng.shuffle(perm)
        r = q.relabel(dict(zip(verts, perm)))
        assert canonical_form(q) == canonical_form(r)


def test_canonical_form_separates_non_isomorphic_quivers():
    rng = random.Random(62)
    pool = [random_quiver(rng, 4, 2) for _ in range(40)]
    for a in pool:
        for b in pool:
            same = is_isomorphic(Quiver(a.arrows()), Quiver(b.arrows())) is not None and len(a.vertices()) == len(b.vertices())
            assert (canonical_form(a) == canonical_form(b)) == same


def test_markov_class_is_a_single_node():
    node = explore_class(markov())
    assert node.members_found == 1 and node.frontier_exhausted


def test_a3_class_has_four_members():
    node = explore_class(a3_path())
    assert node.members_found == 4 and node.frontier_exhausted
    assert node.representative in node.members
    assert any(canonical_form(three_cycle()) == m for m in node.members)


def test_bounds_are_reported():
    node = explore_class(Quiver({(1, 2): 1, (2, 3): 2}), max_weight=4, max_nodes=3)
    assert not node.frontier_exhausted
    assert node.node_bound_hit or node.weight_bound_hit


def test_class_embedding_verdicts():
    a3 = explore_class(a3_path())
    assert class_embeds(Quiver({(1, 2): 1}), a3) is Verdict.YES
    assert class_embeds(markov(), a3) is Verdict.NO
    wild = explore_class(Quiver({(1, 2): 3, (2, 3): 3}), max_weight=4, max_nodes=20)
    assert class_embeds(markov(), wild) is Verdict.UNKNOWN


def test_strip_isolated():
    assert strip_isolated(Quiver()) == ONE_VERTEX
    assert strip_isolated(Quiver({(1, 2): 1}, isolated=(5,))) == Quiver({(1, 2): 1})
    assert explore_class(strip_isolated(Quiver())).members_found == 1


def test_order_check_on_mutations():
    pairs = [(Quiver({(1, 2): 1}), mutate(a3_path(), 2)), (Quiver(), markov())]
    report = poset_order_check(pairs)
    assert report.ok and report.checked == 2
