"""Monomial subcomplexes Delta_J and their reduced cochain cohomology.

Faces are bitmasks over the generator indices.  The empty face is the
(-1)-dimensional trivial simplex, so the augmented cochain complex starts at
degree -1 and a face with k vertices sits in degree k-1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import EntryCoeff, SparseMatrix
from .linalg import rank_exact, rank_mod_p
from .monomial import MonomialSeq, bits, popcount

import numpy as np


@dataclass(frozen=True)
class SimplicialComplexT:
    vertices: int  # mask of the vertex universe
    faces: frozenset[int]  # masks; contains 0 (the trivial face) when nonempty

    def __post_init__(self):
        for f in self.faces:
            if f & ~self.vertices:
                raise ValueError("face outside vertex set")
            for v in bits(f):
                if (f & ~(1 << (v - 1))) not in self.faces:
                    raise ValueError("not closed under subsets")

    def faces_by_dim(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for f in self.faces:
            out.setdefault(popcount(f) - 1, []).append(f)
        for v in out.values():
            v.sort()
        return out

    @property
    def dim(self) -> int:
        return max((popcount(f) - 1 for f in self.faces), default=-2)


def delta_complex(seq: MonomialSeq, J: int) -> SimplicialComplexT:
    """Delta_J = { M_J \\ K : K in S_J }."""
    M = seq.m_closure(J)
    faces = frozenset(M & ~K for K in seq.s_class(J))
    verts = 0
    for f in faces:
        verts |= f
    return SimplicialComplexT(vertices=verts, faces=faces)


def reduced_cochain(delta: SimplicialComplexT) -> list[SparseMatrix]:
    """Augmented cochain matrices delta^i : C^i -> C^(i+1), i = -1..dim-1.

    The coefficient from F* to (F u {v})* is (-1)^(index of v in the larger
    face), matching the dual-basis convention that makes these matrices equal
    the Taylor subcomplex differentials in the c-basis.
    """
    by_dim = delta.faces_by_dim()
    out: list[SparseMatrix] = []
    for i in sorted(by_dim):
        if i + 1 not in by_dim:
            break
        mat = SparseMatrix(by_dim[i + 1], by_dim[i])
        for big in by_dim[i + 1]:
            for v in bits(big):
                small = big & ~(1 << (v - 1))
                if small not in delta.faces:
                    continue
                below = popcount(big & ((1 << (v - 1)) - 1))
                mat.put(big, small, EntryCoeff(-1 if below % 2 else 1))
        out.append(mat)
    return out


def cohomology_ranks(delta: SimplicialComplexT, field_char: int = 0) -> dict[int, int]:
    """Ranks of reduced cohomology in each degree, by exact elimination."""
    by_dim = delta.faces_by_dim()
    if not by_dim:
        return {}
    mats = reduced_cochain(delta)
    degrees = sorted(by_dim)
    rank_of: dict[int, int] = {}
    for i, mat in zip(degrees, mats):
        if field_char:
            arr = np.zeros((mat.rows, mat.cols), dtype=np.int64)
            for (r, c), e in mat.entries.items():
                arr[r, c] = e.sign % field_char
            rank_of[i] = rank_mod_p(arr, field_char)
        else:
            dense = [[0] * mat.cols for _ in range(mat.rows)]
            for (r, c), e in mat.entries.items():
                dense[r][c] = e.sign
            rank_of[i] = rank_exact(dense)
    out: dict[int, int] = {}
    for i in degrees:
        dim = len(by_dim[i])
        out[i] = dim - rank_of.get(i, 0) - rank_of.get(i - 1, 0)
    return out
