import pytest

from suppvar.complexes import taylor_class_matrices
from suppvar.monomial import bits, mask_of, popcount
from suppvar.simplicial import (
    SimplicialComplexT,
    cohomology_ranks,
    delta_complex,
    reduced_cochain,
)

from conftest import BADDIAG, cycle_seq, path_seq, seq


def faces_of(delta):
    return {tuple(sorted(bits(f))) for f in delta.faces}


def test_delta_seven_cycle():
    g7 = cycle_seq(7)
    delta = delta_complex(g7, mask_of([1, 3, 5]))
    assert faces_of(delta) == {(), (2,), (3,), (4,), (2, 4)}


def test_delta_singleton_class():
    g6 = cycle_seq(6)
    delta = delta_complex(g6, mask_of([1]))
    assert faces_of(delta) == {()}


def test_delta_six_cycle_full_class():
    # the independence complex of the 6-cycle: 6 points, 8 edges (2 long
    # diagonals missing... exactly the non-adjacent pairs), 2 triangles
    g6 = cycle_seq(6)
    delta = delta_complex(g6, mask_of(range(1, 7)))
    by_dim = delta.faces_by_dim()
    assert len(by_dim[0]) == 6
    assert len(by_dim[1]) == 9
    assert len(by_dim[2]) == 2
    assert set(by_dim[2]) == {mask_of([1, 3, 5]), mask_of([2, 4, 6])}


def test_delta_closed_under_subsets():
    with pytest.raises(ValueError):
        SimplicialComplexT(vertices=0b11, faces=frozenset({0b11}))


def test_reduced_cochain_seven_cycle_matrices():
    g7 = cycle_seq(7)
    delta = delta_complex(g7, mask_of([1, 3, 5]))
    mats = reduced_cochain(delta)
    assert len(mats) == 2
    aug, top = mats
    assert aug.shape == (3, 1) and top.shape == (1, 3)
    assert sorted(e.sign for e in aug.entries.values()) == [1, 1, 1]
    # on bases ({2}*, {3}*, {4}*) -> ({2,4}*) the coboundary is (-1, 0, +1)
    row = {}
    for (r, c), e in top.entries.items():
        row[top.col_basis[c]] = e.sign
    assert row == {mask_of([2]): -1, mask_of([4]): 1}


def test_one_point_complex():
    delta = SimplicialComplexT(vertices=0b1, faces=frozenset({0, 0b1}))
    mats = reduced_cochain(delta)
    assert len(mats) == 1
    assert mats[0].shape == (1, 1)
    (entry,) = mats[0].entries.values()
    assert entry.sign == 1
    assert all(r == 0 for r in cohomology_ranks(delta).values())


def test_empty_complex_cohomology():
    delta = SimplicialComplexT(vertices=0, faces=frozenset({0}))
    assert cohomology_ranks(delta) == {-1: 1}


def test_cohomology_six_cycle_full_class():
    g6 = cycle_seq(6)
    delta = delta_complex(g6, mask_of(range(1, 7)))
    ranks = cohomology_ranks(delta)
    assert {d: r for d, r in ranks.items() if r} == {1: 2}
    assert ranks[-1] == 0 and ranks[0] == 0


def test_ksgnrel_matrix_identity(corpus):
    # the c-basis Taylor subcomplex differentials equal the reduced cochain
    # matrices of the monomial subcomplex, entrywise under K <-> M \ K
    for s in list(corpus) + [BADDIAG, cycle_seq(7)]:
        reps = sorted({s.m_closure(J) for J in range(1 << s.n)})
        for M in reps:
            members = s.s_class(M)
            by_size = {}
            for K in members:
                by_size.setdefault(popcount(K), []).append(K)
            tmats = taylor_class_matrices(s, M, basis="c")
            delta = delta_complex(s, M)
            cochain_by_coldim = {}
            for m in reduced_cochain(delta):
                if m.col_basis:
                    cochain_by_coldim[popcount(m.col_basis[0])] = m
            sizes = sorted(by_size)
            ti = 0
            for i in sizes:
                if i - 1 not in by_size:
                    continue
                tmat = tmats[ti]
                ti += 1
                mm = popcount(M)
                cmat = cochain_by_coldim.get(mm - i)
                assert cmat is not None
                for K in by_size[i]:
                    for T in by_size[i - 1]:
                        te = tmat.entries.get(
                            (tmat.row_basis.index(T), tmat.col_basis.index(K))
                        )
                        face_K = M & ~K
                        face_T = M & ~T
                        ce = cmat.entries.get(
                            (cmat.row_basis.index(face_T), cmat.col_basis.index(face_K))
                        )
                        tv = 0 if te is None else te.sign
                        cv = 0 if ce is None else ce.sign
                        assert tv == cv, (str(s), bin(M), bin(K), bin(T))


def test_sclass_bijects_with_faces(corpus):
    for s in corpus:
        for J in range(1 << s.n):
            M = s.m_closure(J)
            members = s.s_class(J)
            delta = delta_complex(s, J)
            assert {M & ~K for K in members} == set(delta.faces)


# -- Kozlov homology oracles -------------------------------------------------------


def path_class_delta(n_cycle, i):
    g = cycle_seq(n_cycle)
    return delta_complex(g, mask_of(range(1, i + 1)))


def expected_path_entry(i):
    # trivial when 3 | i, else rank 1 at entry floor(i/3 - 1)
    return None if i % 3 == 0 else (i - 3) // 3


@pytest.mark.parametrize("n", [5, 7, 10])
def test_kozlov_path_classes(n):
    for i in range(1, n - 1):
        ranks = cohomology_ranks(path_class_delta(n, i))
        nonzero = {d: r for d, r in ranks.items() if r}
        entry = expected_path_entry(i)
        if entry is None:
            assert nonzero == {}, (n, i)
        else:
            assert nonzero == {entry: 1}, (n, i)


@pytest.mark.parametrize(
    "n,entry,rank",
    [(4, 0, 1), (5, 1, 1), (6, 1, 2), (7, 1, 1), (8, 2, 1), (9, 2, 2), (10, 2, 1)],
)
def test_kozlov_full_classes_small(n, entry, rank):
    g = cycle_seq(n)
    ranks = cohomology_ranks(delta_complex(g, mask_of(range(1, n + 1))))
    nonzero = {d: r for d, r in ranks.items() if r}
    assert nonzero == {entry: rank}
