import random
from itertools import combinations

import pytest

from suppvar.complexes import (
    DiagramEdge,
    EntryCoeff,
    Obstruction,
    SparseMatrix,
    WeakGrading,
    chat_complex,
    components,
    e_action,
    homogeneous_sigma,
    restrict_total,
    subcomplex_diagram,
    taylor_class_matrices,
    taylor_kbar,
    totalization,
    weak_grading,
)
from suppvar.linalg import FieldPoint, evaluate, rank_exact, det_symbolic, _entry_polys
from suppvar.monomial import Monomial, MonomialSeq, bits, mask_of, popcount
from suppvar.polys import RatPoly, parse_poly
from suppvar.support import MembershipTester

from conftest import BADDIAG, cycle_seq, path_seq, random_minimal_seq, seq


def label_entry(mat: SparseMatrix, row_label: int, col_label: int):
    r = mat.row_basis.index(row_label)
    c = mat.col_basis.index(col_label)
    return mat.entries.get((r, c))


# -- Taylor complex over the closed field -------------------------------------


def test_taylor_kbar_seven_cycle_class_matrices():
    # the displayed T_J matrices for J = {1,3,5}, on the paper's basis order
    g7 = cycle_seq(7)
    J = mask_of([1, 3, 5])
    mats = taylor_class_matrices(g7, J, basis="b")
    assert len(mats) == 2
    m4, m5 = mats  # sizes 4->3 and 5->4
    col = [
        label_entry(m5, mask_of(k), mask_of([1, 2, 3, 4, 5]))
        for k in ([1, 3, 4, 5], [1, 2, 4, 5], [1, 2, 3, 5])
    ]
    assert [e.sign for e in col] == [-1, 1, -1]
    row = [
        label_entry(m4, mask_of([1, 3, 5]), mask_of(k))
        for k in ([1, 3, 4, 5], [1, 2, 4, 5], [1, 2, 3, 5])
    ]
    assert [None if e is None else e.sign for e in row] == [1, None, -1]


def test_taylor_kbar_regular_sequence_zero_differential():
    # over the closed field every face term drops: lcms strictly grow
    s = seq({1: 2}, {2: 2})
    t = taylor_kbar(s)
    assert all(not m.entries for m in t.diffs.values())
    assert t.total_dim() == 4


def test_taylor_kbar_square_zero_path():
    s = path_seq(4)
    t = taylor_kbar(s)
    assert t.total_dim() == 16
    t.check_square_zero()


def test_taylor_kbar_grading_by_size():
    g6 = cycle_seq(6)
    t = taylor_kbar(g6)
    for i, masks in t.pieces.items():
        assert all(popcount(J) == i for J in masks)


# -- e_action ------------------------------------------------------------------


def test_e_action_examples():
    g6 = cycle_seq(6)
    assert e_action(g6, 1, mask_of([1])) is None  # j already in J
    hit = e_action(g6, 3, mask_of([1]))
    assert hit == (-1, mask_of([1, 3])), "sgn((3,1)) = -1"
    assert e_action(g6, 2, mask_of([1])) is None  # shares x2
    # c-basis folds in ksgn(j, J)
    sign_c, tgt = e_action(g6, 3, mask_of([1]), basis="c")
    assert tgt == mask_of([1, 3])
    assert sign_c == g6.ksgn_pair(3, mask_of([1])) * -1


def test_e_action_multiplication_condition():
    g6 = cycle_seq(6)
    for J in range(1 << 6):
        fj = g6.lcm_subset(J)
        for j in range(1, 7):
            hit = e_action(g6, j, J)
            in_J = bool(J >> (j - 1) & 1)
            cond = not in_J and g6.gens[j - 1].coprime(fj)
            assert (hit is not None) == cond


# -- the 2-periodic oracle complex ----------------------------------------------


def test_chat_two_generators():
    s = seq({1: 2}, {2: 2})
    eo, oe = chat_complex(s)
    assert eo.shape == (2, 2) and oe.shape == (2, 2)
    pt = FieldPoint(0, (1, 1))
    r_eo = rank_exact(evaluate(eo, pt))
    r_oe = rank_exact(evaluate(oe, pt))
    # the twisted Koszul complex of a regular sequence is exact off the origin
    assert r_eo + r_oe == 2
    assert r_eo == 1 and r_oe == 1


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_chat_square_zero_cycles(n):
    eo, oe = chat_complex(cycle_seq(n))
    assert not eo.compose_symbolic(oe)
    assert not oe.compose_symbolic(eo)


def test_chat_square_zero_corpus(corpus):
    for s in corpus:
        eo, oe = chat_complex(s)
        assert not eo.compose_symbolic(oe), str(s)
        assert not oe.compose_symbolic(eo), str(s)


def test_chat_six_cycle_homology_points():
    g6 = cycle_seq(6)
    eo, oe = chat_complex(g6)

    def homology_nonzero(pt):
        return rank_exact(evaluate(eo, pt)) + rank_exact(evaluate(oe, pt)) < eo.cols

    assert not homology_nonzero(FieldPoint(0, (1, 1, 1, 1, 1, 1)))
    assert homology_nonzero(FieldPoint(0, (1, 1, 1, 1, 1, -1)))


# -- subcomplex diagram ----------------------------------------------------------


def test_diagram_path_matches_figure():
    s = path_seq(4)
    diag = subcomplex_diagram(s)
    classes = {tuple(sorted(bits(c))) for c in diag.classes}
    assert classes == {
        (), (1,), (2,), (3,), (4,), (1, 2), (1, 4), (2, 3), (3, 4),
        (1, 2, 3), (2, 3, 4), (1, 2, 3, 4),
    }
    edges = {
        (tuple(sorted(bits(e.source))), tuple(sorted(bits(e.target))), e.generator)
        for e in diag.edges
    }
    assert edges == {
        ((), (1,), 1), ((), (2,), 2), ((), (3,), 3), ((), (4,), 4),
        ((1,), (1, 2, 3), 3), ((1,), (1, 4), 4),
        ((2,), (2, 3, 4), 4),
        ((3,), (1, 2, 3), 1),
        ((4,), (1, 4), 1), ((4,), (2, 3, 4), 2),
        ((1, 2), (1, 2, 3, 4), 4),
        ((3, 4), (1, 2, 3, 4), 1),
    }


def test_diagram_regular_sequence_hypercube():
    s = seq({1: 2}, {2: 2}, {3: 2})
    diag = subcomplex_diagram(s)
    assert len(diag.classes) == 8  # every subset its own class
    assert len(diag.edges) == 3 * 4  # n * 2^(n-1)
    assert len(components(diag)) == 1


def test_diagram_six_cycle_classes():
    g6 = cycle_seq(6)
    diag = subcomplex_diagram(g6)
    by_size = {}
    for c in diag.classes:
        by_size.setdefault(popcount(c), []).append(c)
    assert {k: len(v) for k, v in by_size.items()} == {0: 1, 1: 6, 2: 9, 3: 6, 4: 6, 6: 1}
    # the nine 2-classes split into six adjacent pairs and three opposite pairs
    adjacent = [c for c in by_size[2] if g6.lcm_subset(c).degree == 3]
    opposite = [c for c in by_size[2] if g6.lcm_subset(c).degree == 4]
    assert len(adjacent) == 6 and len(opposite) == 3


# -- weak gradings ----------------------------------------------------------------


def test_weak_grading_path_matches_display_up_to_shift():
    s = path_seq(4)
    diag = subcomplex_diagram(s)
    grading = weak_grading(diag)
    assert isinstance(grading, WeakGrading)
    display = {
        (): 0, (1,): 1, (2,): 1, (3,): 1, (4,): 1,
        (1, 2, 3): 2, (1, 4): 2, (2, 3, 4): 2,
        (1, 2): 3, (3, 4): 3, (1, 2, 3, 4): 4, (2, 3): 5,
    }
    got = {tuple(sorted(bits(c))): w for c, w in grading.weights.items()}
    # same weights up to one constant shift per connected component
    for comp in components(diag):
        keys = [tuple(sorted(bits(c))) for c in comp]
        shifts = {display[k] - got[k] for k in keys}
        assert len(shifts) == 1
    # normalization pins the minimum weight in each component at zero
    for comp in components(diag):
        assert min(grading.weights[c] for c in comp) == 0


def test_weak_grading_baddiag_obstruction():
    result = weak_grading(subcomplex_diagram(BADDIAG))
    assert isinstance(result, Obstruction)
    witness = {tuple(sorted(bits(c))) for c in result.classes}
    assert witness == {(), (1,), (1, 2), (4,), (1, 2, 3, 4, 5)}


def test_weak_grading_regular_sequence():
    s = seq({1: 2}, {2: 2}, {3: 2})
    grading = weak_grading(subcomplex_diagram(s))
    assert isinstance(grading, WeakGrading)
    for c, w in grading.weights.items():
        assert w == popcount(c)


def pairwise_coprime(s, mask):
    idx = list(bits(mask))
    return all(
        s.gens[a - 1].coprime(s.gens[b - 1]) for a, b in combinations(idx, 2)
    )


def has_coprime_witness(s):
    for S in range(1 << s.n):
        for T in range(S + 1, 1 << s.n):
            if popcount(S) == popcount(T):
                continue
            if s.lcm_subset(S) != s.lcm_subset(T):
                continue
            if pairwise_coprime(s, S) and pairwise_coprime(s, T):
                return True
    return False


def test_gradable_iff_no_coprime_witness():
    rng = random.Random(17)
    cases = [seq({1: 2}, {2: 2}, {1: 2, 2: 2})]  # witness S={1,2}, T={3}
    for _ in range(30):
        cases.append(random_minimal_seq(rng, rng.randrange(2, 5), 4))
    hit_nongradable = 0
    for s in cases:
        gradable = isinstance(weak_grading(subcomplex_diagram(s)), WeakGrading)
        assert gradable == (not has_coprime_witness(s)), str(s)
        hit_nongradable += not gradable
    assert hit_nongradable >= 1


# -- homogeneous sigma --------------------------------------------------------------


def test_homogeneous_sigma_six_cycle():
    g6 = cycle_seq(6)
    sigma = homogeneous_sigma(g6)
    w = {tuple(sorted(bits(c))): v for c, v in sigma.weights.items()}
    assert w[()] == 0
    assert w[(1,)] == 1
    assert w[(1, 4)] == 2
    assert w[(1, 2, 3)] == 2
    assert w[tuple(range(1, 7))] == 3


def test_homogeneous_sigma_regular_sequence():
    s = seq({1: 2}, {2: 2}, {3: 2})
    sigma = homogeneous_sigma(s)
    for c, v in sigma.weights.items():
        assert v == popcount(c)


def test_homogeneous_sigma_path_vs_weak_grading():
    s = path_seq(4)
    sigma = homogeneous_sigma(s)
    assert sigma.weights[s.m_closure(mask_of([1, 2, 3, 4]))] == 2  # floor(5/2)
    diag = subcomplex_diagram(s)
    grading = weak_grading(diag)
    for comp in components(diag):
        shifts = {sigma.weights[c] - grading.weights[c] for c in comp}
        assert len(shifts) == 1


def test_homogeneous_sigma_rejects_inhomogeneous():
    with pytest.raises(ValueError):
        homogeneous_sigma(seq({1: 2}, {2: 3}))


# -- totalization ----------------------------------------------------------------------


def test_totalization_one_generator():
    s = seq({1: 2})
    t = totalization(s, homogeneous_sigma(s))
    assert {d: len(m) for d, m in t.pieces.items()} == {0: 1, -1: 1}
    mat = t.diffs[0]
    (entry,) = mat.entries.values()
    assert entry.param == 1


def test_totalization_six_cycle_structure():
    g6 = cycle_seq(6)
    sigma = homogeneous_sigma(g6)
    t = totalization(g6, sigma)
    assert t.total_dim() == 64
    t.check_square_zero()
    diag = subcomplex_diagram(g6)
    comps = components(diag)
    big = max(comps, key=len)
    assert len(big) == 17
    sizes = {tuple(sorted(popcount(c) for c in comp)) for comp in comps}
    # T_empty with singletons, triples, opposite pairs, and the full class
    assert tuple(sorted(popcount(c) for c in big)) == (0,) + (1,) * 6 + (2,) * 3 + (3,) * 6 + (6,)
    sub = restrict_total(t, g6, big)
    assert {d: sub.dim(d) for d in sub.degrees()} == {0: 2, -1: 18, -2: 18, -3: 2}
    sub.check_square_zero()


def test_totalization_total_dimension(corpus):
    for s in corpus:
        diag = subcomplex_diagram(s)
        grading = weak_grading(diag)
        if isinstance(grading, Obstruction):
            continue
        t = totalization(s, grading)
        assert t.total_dim() == 1 << s.n, str(s)
        t.check_square_zero()


def test_totalization_agrees_with_chat_at_points():
    s = path_seq(4)
    tot = MembershipTester(s, "totalization")
    chat = MembershipTester(s, "chat")
    rng = random.Random(23)
    p = 2147483659
    for _ in range(25):
        pt = FieldPoint(p, tuple(rng.randrange(p) for _ in range(4)))
        assert tot.is_member(pt) == chat.is_member(pt)


def test_totalization_rejects_bad_grading():
    g6 = cycle_seq(6)
    sigma = homogeneous_sigma(g6)
    broken = WeakGrading(dict(sigma.weights))
    key = next(iter(broken.weights))
    broken.weights[key] += 1
    with pytest.raises(ValueError):
        totalization(g6, broken)


# -- components -----------------------------------------------------------------------


def test_components_six_cycle():
    g6 = cycle_seq(6)
    comps = components(subcomplex_diagram(g6))
    # classes split by lcm-degree parity into even and odd groups (the
    # paper's two components); the odd group falls apart once more
    assert sorted(len(c) for c in comps) == [6, 6, 17]
    parities = set()
    for comp in comps:
        degs = {g6.lcm_subset(c).degree % 2 for c in comp}
        assert len(degs) == 1
        parities.add(degs.pop())
    assert parities == {0, 1}


def test_components_ten_cycle_parity():
    g10 = cycle_seq(10)
    comps = components(subcomplex_diagram(g10))
    groups = {0: 0, 1: 0}
    for comp in comps:
        degs = {g10.lcm_subset(c).degree % 2 for c in comp}
        assert len(degs) == 1
        groups[degs.pop()] += 1
    assert groups[0] >= 1 and groups[1] >= 1


def test_components_regular_sequence():
    s = seq({1: 2}, {2: 2}, {3: 2})
    assert len(components(subcomplex_diagram(s))) == 1


# -- the section-4 determinant (inter-subcomplex signs) ----------------------------------


def test_six_cycle_odd_component_determinants():
    # each odd component (pairs + quads) is one 6x6 block with determinant
    # +/-(a1a3a5+a2a4a6); together they are the two summands of section 4
    g6 = cycle_seq(6)
    diag = subcomplex_diagram(g6)
    t = totalization(g6, homogeneous_sigma(g6))
    sextic = parse_poly("a1*a3*a5+a2*a4*a6", 6)
    odd = [c for c in components(diag) if len(c) == 6]
    assert len(odd) == 2
    for comp in odd:
        sub = restrict_total(t, g6, comp)
        (mat,) = [m for m in sub.diffs.values() if m.rows and m.cols]
        assert mat.shape == (6, 6)
        det = det_symbolic(_entry_polys(mat, 6), 6)
        assert det in (sextic, -sextic)
