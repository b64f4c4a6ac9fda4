"""Named quivers and the worked examples rerun by the `examples` command."""

from __future__ import annotations

from collections.abc import Callable

from .convergence import LFCase, Trajectory, classify_lf, strong_certificate, weak_certificate
from .fraisse import GenericQuiver, Slot, back_and_forth, realize_extension
from .framing import (
    Color,
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
)
from .linking import convex_hull, extend_irreducible, is_irreducible, is_linked, stream_reduce
from .mutclass import ONE_VERTEX, strip_isolated
from .properties import Acyclic, acyclic_order, MutationAcyclicWithin, Verdict, check_property, fork_point
from .quiver import Quiver, a_infinity, mutate, overfill, restrict
from .sequences import IdentityRay, Induced, PairBlocks, Repeat, ShiftedRay, TriangularPalindromes, triangular
from .words import reduce_word, reduction_trace


def markov() -> Quiver:
    """The 3-cycle with two arrows on each edge."""
    return Quiver({(1, 2): 2, (2, 3): 2, (3, 1): 2})


def three_cycle() -> Quiver:
    return Quiver({(1, 2): 1, (2, 3): 1, (3, 1): 1})


def a3_path() -> Quiver:
    return Quiver({(1, 2): 1, (2, 3): 1})


def two_sided_ray(radius: int = 5) -> Quiver:
    """Hub ``0`` pointing at every other vertex plus rays running outwards, on ``[-radius..radius]`` shifted by ``radius+1``."""
    c = radius + 1
    arrows = {(c, c + k): 1 for k in range(-radius, radius + 1) if k}
    arrows.update({(c + k, c + k + 1): 1 for k in range(1, radius)})
    arrows.update({(c - k, c - k - 1): 1 for k in range(1, radius)})
    return Quiver(arrows)


NAMED: dict[str, Callable[[], Quiver]] = {
    "markov": markov,
    "three-cycle": three_cycle,
    "a3-path": a3_path,
    "two-sided-ray": two_sided_ray,
}


# -- worked examples ----------------------------------------------------------------


def _cycle_mutation() -> bool:
    return mutate(three_cycle(), 2) == Quiver({(2, 1): 1, (3, 2): 1})


def _ray_restriction() -> bool:
    q = two_sided_ray()
    return restrict(q, {5, 6, 7}) == Quiver({(6, 5): 1, (6, 7): 1})


def _ray_overfill() -> bool:
    q = two_sided_ray()
    kept = overfill(q, {5, 6, 7})
    want = {(a, b, m) for a, b, m in q.arrows() if {a, b} & {5, 6, 7}}
    return set(kept.arrows()) == want and len(kept) == 12


def _markov_not_acyclic_within_6() -> bool:
    return check_property(markov(), MutationAcyclicWithin(6)) is Verdict.UNKNOWN


def _cycle_acyclic() -> bool:
    return check_property(three_cycle(), Acyclic()) is Verdict.NO and check_property(
        mutate(three_cycle(), 2), Acyclic()
    ) is Verdict.YES


def _fork_of_q3() -> bool:
    return fork_point(mutate(qn_abundant(3), 2)) == 2


def _q_n_order() -> bool:
    return all(acyclic_order(qn_abundant(n), range(1, n + 2)) == list(range(n + 1, 0, -1)) for n in range(1, 6))


def _pair_blocks_reduce() -> bool:
    return reduce_word((1, 1, 2, 2, 3, 3)) == () and reduction_trace((1, 1, 2, 2, 3, 3)).rank == 1


def _palindromes_reduce() -> bool:
    return reduce_word(TriangularPalindromes().prefix(12)) == ()


def _palindrome_ranks() -> bool:
    tr = reduction_trace(TriangularPalindromes().prefix(2 * triangular(8)))

    def expected(i: int) -> int:
        return next(m for m in range(1, 99) if any(i <= triangular(t) <= i + m - 1 for t in range(1, 20)))

    return all(tr.letter_ranks[i] == expected(i) for i in range(1, 11))


def _reduced_rank_zero() -> bool:
    return reduction_trace((1, 2, 1, 3)).rank == 0


def _palindromes_induced() -> bool:
    return Induced(TriangularPalindromes(), {1, 2, 3}).prefix(10) == (1, 1, 2, 3, 3, 2)


def _stream_pairs() -> bool:
    r = stream_reduce(PairBlocks(), 40)
    return r.frozen == () and len(r.live_suffix) <= 1


def _stream_palindromes() -> bool:
    return stream_reduce(TriangularPalindromes(), 2 * triangular(8)).frozen == ()


def _hull_absent() -> bool:
    return convex_hull(ShiftedRay(3), 1, 10) == frozenset()


def _empty_not_linked() -> bool:
    return is_linked(IdentityRay(), set(), 10) is Verdict.NO


def _irreducible_small() -> bool:
    return extend_irreducible((5,), 2) == (5, 2, 5, 2) and is_irreducible((5, 2, 5, 2))


def _irreducible_worked() -> bool:
    # The displayed 21-letter word collapses to (1) once the 2s are removed;
    # the construction's own output carries one more trailing 1.
    w = extend_irreducible(extend_irreducible(extend_irreducible((5,), 2), 8), 1)
    return is_irreducible(w) and w[:21] == (5, 2, 5, 2, 8, 2, 5, 2, 5, 8, 1, 8, 5, 2, 5, 2, 8, 2, 5, 2, 5)


def _base_cvector() -> bool:
    fq = mutate_framed(frame(Quiver({(2, 1): 2})), 1)
    return c_vector(fq, 2).values() == (2, 1) and color(fq, 1) is Color.RED and color(fq, 2) is Color.GREEN


def _q2_cvector() -> bool:
    fq = mutate_framed_word(frame(qn_abundant(2)), (1, 2))
    return c_vector(fq, 3).values() == (6, 2, 1)


def _q_n_shape() -> bool:
    return qn_abundant(1) == Quiver({(2, 1): 2}) and qn_abundant(2) == Quiver({(2, 1): 2, (3, 1): 2, (3, 2): 2})


def _sink_sequences() -> bool:
    ok = all(is_strongly_triangular(tuple(range(1, n + 1)), qn_abundant(n), n + 1) for n in range(1, 6))
    return ok and not is_triangular((3, 1), qn_abundant(3))


def _stabilized() -> bool:
    return [stabilized_c_vector(n).values() for n in (1, 2, 3)] == [(2, 1), (6, 2, 1), (18, 6, 2, 1)]


def _witness_base() -> bool:
    w = offdiag_witness((1,))
    return w.quiver == Quiver({(2, 1): 2}) and w.vertex == 1 and w.entry == 2


def _identity_ray_reverses() -> bool:
    t = Trajectory(a_infinity(), IdentityRay()).step(10)
    start = a_infinity().window(40)
    now = t.view(range(1, 41))
    diff = set(start.arrows()) ^ set(now.arrows())
    return bool(diff) and all(min(a, b) <= 11 for a, b, _ in diff)


def _shifted_ray_weak() -> bool:
    c = weak_certificate(Trajectory(a_infinity(), ShiftedRay(2)), range(1, 21), 40)
    want = Quiver({(k, k + 1): 1 for k in range(2, 20)}, isolated=(1,))
    return c.stable and c.limit == want


def _identity_ray_stable() -> bool:
    t = Trajectory(a_infinity(), IdentityRay())
    w = weak_certificate(t, range(1, 21), 40)
    s = strong_certificate(t, range(1, 21), 40)
    return w.stable and w.limit == restrict(a_infinity().window(40), range(1, 21)) and s.stable


def _shifted_ray_strong() -> bool:
    return strong_certificate(Trajectory(a_infinity(), ShiftedRay(2)), {1}, 38).oscillating


def _pair_blocks_fixed() -> bool:
    c = strong_certificate(Trajectory(markov(), PairBlocks()), {1, 2, 3}, 10)
    return c.stable and c.status.step % 2 == 0 and c.limit == markov()


def _classify() -> bool:
    return (
        classify_lf(PairBlocks()).case is LFCase.ALL_CONVERGE
        and classify_lf(IdentityRay()).case is LFCase.BOTH_DENSE
        and classify_lf(Repeat(3)).case is LFCase.C_NOT_DENSE
        and classify_lf(Repeat(3)).d_dense is False
    )


def _isolated_extension() -> bool:
    g = GenericQuiver(0)
    g.force_window(4)
    (w,) = realize_extension(g, range(1, 5), [Slot()])
    return g.committed.degree(w) == 0


def _correction_extension() -> bool:
    g = GenericQuiver(1)
    g.force_window(3)
    word = (1,)
    before = g.frame(word)(1, 3)
    (w,) = realize_extension(g, {1, 3}, [Slot({1: -1, 3: 5 - before})], word)
    return mutate(g.frame(word), w)(1, 3) == 5


def _baf_first() -> bool:
    return back_and_forth(GenericQuiver(0), 3, 1)[0].pairs == ((3, 3),)


def _strip_empty() -> bool:
    return strip_isolated(Quiver()) == ONE_VERTEX


WORKED_EXAMPLES: dict[str, Callable[[], bool]] = {
    "three-cycle-mutation": _cycle_mutation,
    "ray-restriction": _ray_restriction,
    "ray-overfill": _ray_overfill,
    "markov-mutation-acyclic-unknown": _markov_not_acyclic_within_6,
    "three-cycle-acyclicity": _cycle_acyclic,
    "fork-point-of-q3": _fork_of_q3,
    "abundant-family-order": _q_n_order,
    "pair-blocks-reduce": _pair_blocks_reduce,
    "palindromes-reduce": _palindromes_reduce,
    "palindrome-letter-ranks": _palindrome_ranks,
    "reduced-rank-zero": _reduced_rank_zero,
    "palindromes-induced": _palindromes_induced,
    "stream-pair-blocks": _stream_pairs,
    "stream-palindromes": _stream_palindromes,
    "hull-of-absent-letter": _hull_absent,
    "empty-set-unlinked": _empty_not_linked,
    "irreducible-5252": _irreducible_small,
    "irreducible-worked-word": _irreducible_worked,
    "base-case-c-vector": _base_cvector,
    "q2-c-vector": _q2_cvector,
    "abundant-family-shape": _q_n_shape,
    "sink-sequences-triangular": _sink_sequences,
    "stabilized-c-vectors": _stabilized,
    "offdiag-witness-base": _witness_base,
    "identity-ray-reverses": _identity_ray_reverses,
    "shifted-ray-weak-limit": _shifted_ray_weak,
    "identity-ray-stable": _identity_ray_stable,
    "shifted-ray-strong-oscillates": _shifted_ray_strong,
    "pair-blocks-fix-quiver": _pair_blocks_fixed,
    "lf-classification": _classify,
    "isolated-extension": _isolated_extension,
    "correction-extension": _correction_extension,
    "back-and-forth-start": _baf_first,
    "strip-arrowless": _strip_empty,
}


def run_worked_examples() -> list[tuple[str, bool, str]]:
    out = []
    for name, check in WORKED_EXAMPLES.items():
        try:
            out.append((name, bool(check()), ""))
        except Exception as exc:  # report, do not abort the sweep
            out.append((name, False, f"{type(exc).__name__}: {exc}"))
    return out
