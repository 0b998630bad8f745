"""Exact linear algebra: ranks over Q and F_p, symbolic minors, generic rank.

The mod-p kernel has two paths: a per-pivot int64 elimination valid for any
p < 2^31.5, and a blocked float64 route (BLAS matmul on the trailing update)
for primes small enough that a panel of products fits exactly in a double.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .complexes import SparseMatrix
from .polys import Ideal, RatPoly

#: identity-testing primes, all just above 2^31
BIG_PRIMES = (2147483659, 2147483693, 2147483713)

#: a prime small enough for the blocked float64 elimination (64 * p^2 < 2^53)
FAST_PRIME = 16777213


@dataclass(frozen=True)
class FieldPoint:
    """A point of A^n over Q (char 0) or F_p (char p prime)."""

    char: int
    coords: tuple

    def __post_init__(self):
        if self.char < 0:
            raise ValueError("characteristic must be 0 or a prime")

    @property
    def n(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        if self.char:
            return all(c % self.char == 0 for c in self.coords)
        return all(c == 0 for c in self.coords)


def evaluate(mat: SparseMatrix, pt: FieldPoint):
    """Evaluate a symbolic matrix at a point.

    Returns an int64 numpy array (entries reduced mod p) in finite
    characteristic, else a dense list-of-lists of Fractions.
    """
    if pt.char:
        p = pt.char
        out = np.zeros((mat.rows, mat.cols), dtype=np.int64)
        for (r, c), e in mat.entries.items():
            v = e.sign * (pt.coords[e.param - 1] if e.param else 1)
            out[r, c] = v % p
        return out
    rows = [[Fraction(0)] * mat.cols for _ in range(mat.rows)]
    for (r, c), e in mat.entries.items():
        v = Fraction(pt.coords[e.param - 1]) if e.param else Fraction(1)
        rows[r][c] = e.sign * v
    return rows


# ---------------------------------------------------------------------------
# Ranks
# ---------------------------------------------------------------------------


def rank_mod_p(A: np.ndarray, p: int) -> int:
    """Exact rank over F_p."""
    if A.size == 0:
        return 0
    if 16 * (p - 1) * (p - 1) < 2**53:
        return _rank_blocked_small_p(A, p)
    return _rank_int64(A, p)


def _rank_int64(A: np.ndarray, p: int) -> int:
    A = np.remainder(np.asarray(A, dtype=np.int64), p)
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i], c:] = A[[i, r], c:]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = A[r, c:] * inv % p
        idx = np.flatnonzero(A[r + 1 :, c]) + r + 1
        if idx.size:
            factors = A[idx, c].copy()
            A[idx, c:] = (A[idx, c:] - factors[:, None] * A[r, c:][None, :]) % p
        r += 1
    return r


def _rank_blocked_small_p(A: np.ndarray, p: int) -> int:
    """Right-looking blocked LU over F_p with float64 trailing updates.

    Requires panel * (p-1)^2 < 2^53 so the matmul is exact in doubles.
    """
    A = np.remainder(np.asarray(A, dtype=np.int64), p).astype(np.float64)
    m, n = A.shape
    panel = max(1, min(128, int(2**53 // ((p - 1) * (p - 1)))))
    r = 0
    c0 = 0
    while r < m and c0 < n:
        cend = min(n, c0 + panel)
        piv_cols: list[int] = []
        for col in range(c0, cend):
            rr = r + len(piv_cols)
            if rr == m:
                break
            seg = A[rr:, col]
            nz = np.flatnonzero(seg)
            if nz.size == 0:
                continue
            i = rr + int(nz[0])
            if i != rr:
                A[[rr, i], :] = A[[i, rr], :]
            inv = float(pow(int(A[rr, col]), -1, p))
            below = A[rr + 1 :, col]
            factors = np.remainder(
                (below.astype(np.int64) * int(inv)) % p, p
            ).astype(np.float64)
            A[rr + 1 :, col] = factors  # store multipliers in place
            if factors.any() and col + 1 < cend:
                block = (
                    A[rr + 1 :, col + 1 : cend]
                    - factors[:, None] * A[rr, col + 1 : cend][None, :]
                )
                A[rr + 1 :, col + 1 : cend] = np.remainder(
                    block.astype(np.int64), p
                ).astype(np.float64)
            piv_cols.append(col)
        k = len(piv_cols)
        if k and cend < n:
            piv_rows = list(range(r, r + k))
            # forward-substitute the pivot rows' trailing parts
            for t in range(1, k):
                row = A[piv_rows[t], cend:]
                acc = row.astype(np.int64)
                for s in range(t):
                    f = int(A[piv_rows[t], piv_cols[s]])
                    if f:
                        acc = (acc - f * A[piv_rows[s], cend:].astype(np.int64)) % p
                A[piv_rows[t], cend:] = acc.astype(np.float64)
            L = A[r + k :, piv_cols]
            if L.size:
                U = A[piv_rows, cend:]
                prod = L @ U
                updated = (
                    A[r + k :, cend:].astype(np.int64) - prod.astype(np.int64)
                ) % p
                A[r + k :, cend:] = updated.astype(np.float64)
        r += k
        c0 = cend
    return r


def rank_exact(matrix, char: int = 0) -> int:
    """Exact rank; fraction-free over Q, elimination over F_p.

    ``matrix`` is a numpy array or a list of rows of ints/Fractions.
    """
    if char:
        return rank_mod_p(np.asarray(matrix, dtype=np.int64), char)
    rows = _to_int_rows(matrix)
    return _rank_int_sparse(rows)


def _to_int_rows(matrix) -> list[dict[int, int]]:
    out = []
    for row in matrix:
        den = 1
        vals = [Fraction(x) for x in row]
        for v in vals:
            den = den * v.denominator // gcd(den, v.denominator)
        ints = {j: int(v * den) for j, v in enumerate(vals) if v}
        out.append(ints)
    return out


def _rank_int_sparse(rows: list[dict[int, int]]) -> int:
    """Fraction-free sparse elimination with gcd scaling after each update."""
    live = [r for r in rows if r]
    rank = 0
    while live:
        # Markowitz-ish: favor short rows and small pivots to limit fill.
        best = min(range(len(live)), key=lambda i: (len(live[i]), _min_abs(live[i])))
        pivot_row = live.pop(best)
        col = min(pivot_row, key=lambda c: (abs(pivot_row[c]), c))
        pv = pivot_row[col]
        rank += 1
        nxt = []
        for row in live:
            v = row.get(col)
            if v is None:
                nxt.append(row)
                continue
            merged: dict[int, int] = {}
            for c, x in row.items():
                merged[c] = x * pv
            for c, x in pivot_row.items():
                nv = merged.get(c, 0) - x * v
                if nv:
                    merged[c] = nv
                else:
                    merged.pop(c, None)
            if merged:
                g = 0
                for x in merged.values():
                    g = gcd(g, x)
                if g > 1:
                    merged = {c: x // g for c, x in merged.items()}
                nxt.append(merged)
        live = nxt
    return rank


def _min_abs(row: dict[int, int]) -> int:
    return min(abs(v) for v in row.values())


# ---------------------------------------------------------------------------
# Generic rank and symbolic minors
# ---------------------------------------------------------------------------


def random_point(n: int, p: int, rng: random.Random) -> FieldPoint:
    return FieldPoint(p, tuple(rng.randrange(p) for _ in range(n)))


def generic_rank(
    mat: SparseMatrix,
    nparams: int,
    seed: int = 0,
    samples: int = 3,
    primes: Sequence[int] = BIG_PRIMES,
    certify: bool = False,
) -> int:
    """Rank over the rational function field in the parameters.

    Max over ``samples`` random evaluations per prime; every evaluation rank
    is a lower bound, so the max can only underestimate, with probability
    bounded by Schwartz-Zippel.  With ``certify`` (dimensions <= 12), an exact
    symbolic elimination confirms the value.
    """
    rng = random.Random(f"generic-rank:{seed}")
    best = 0
    for p in primes:
        for _ in range(samples):
            pt = random_point(nparams, p, rng)
            best = max(best, rank_mod_p(evaluate(mat, pt), p))
    if certify:
        if max(mat.rows, mat.cols) > 12:
            raise ValueError("symbolic certification capped at dimension 12")
        best_sym = _rank_symbolic(mat, nparams)
        if best_sym != best:
            raise AssertionError("randomized generic rank disagrees with symbolic")
    return best


def _entry_polys(mat: SparseMatrix, nparams: int) -> list[list[RatPoly]]:
    zero = RatPoly.zero(nparams)
    cells = [[zero] * mat.cols for _ in range(mat.rows)]
    for (r, c), e in mat.entries.items():
        if e.param:
            cells[r][c] = RatPoly.var(nparams, e.param, e.sign)
        else:
            cells[r][c] = RatPoly.const(nparams, e.sign)
    return cells


def _rank_symbolic(mat: SparseMatrix, nparams: int) -> int:
    cells = _entry_polys(mat, nparams)
    return _rank_poly_bareiss(cells, nparams)


def poly_exact_div(num: RatPoly, den: RatPoly) -> RatPoly:
    """Exact multivariate division (raises if the division is not exact)."""
    if not den:
        raise ZeroDivisionError("division by zero polynomial")
    n = num.n
    out = RatPoly.zero(n)
    rem = num
    dexp, dc = den.lead()
    while rem:
        rexp, rc = rem.lead()
        q = tuple(a - b for a, b in zip(rexp, dexp))
        if any(e < 0 for e in q):
            raise ArithmeticError("inexact polynomial division")
        qpoly = RatPoly(n, {q: rc / dc})
        out = out + qpoly
        rem = rem - qpoly * den
    return out


def _rank_poly_bareiss(cells: list[list[RatPoly]], nparams: int) -> int:
    m = len(cells)
    n = len(cells[0]) if m else 0
    M = [row[:] for row in cells]
    prev = RatPoly.const(nparams, 1)
    rank = 0
    for k in range(min(m, n)):
        pivot = None
        for i in range(k, m):
            for j in range(k, n):
                if M[i][j]:
                    if pivot is None or len(M[i][j].terms) < len(M[pivot[0]][pivot[1]].terms):
                        pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != k:
            M[pi], M[k] = M[k], M[pi]
        if pj != k:
            for row in M:
                row[pj], row[k] = row[k], row[pj]
        rank += 1
        pv = M[k][k]
        for i in range(k + 1, m):
            for j in range(k + 1, n):
                M[i][j] = poly_exact_div(M[i][j] * pv - M[i][k] * M[k][j], prev)
            M[i][k] = RatPoly.zero(nparams)
        prev = pv
    return rank


def det_symbolic(cells: list[list[RatPoly]], nparams: int) -> RatPoly:
    """Determinant of a square polynomial matrix by fraction-free Bareiss."""
    m = len(cells)
    if m == 0:
        return RatPoly.const(nparams, 1)
    M = [row[:] for row in cells]
    prev = RatPoly.const(nparams, 1)
    sign = 1
    for k in range(m - 1):
        pivot = None
        for i in range(k, m):
            for j in range(k, m):
                if M[i][j]:
                    if pivot is None or len(M[i][j].terms) < len(M[pivot[0]][pivot[1]].terms):
                        pivot = (i, j)
        if pivot is None:
            return RatPoly.zero(nparams)
        pi, pj = pivot
        if pi != k:
            M[pi], M[k] = M[k], M[pi]
            sign = -sign
        if pj != k:
            for row in M:
                row[pj], row[k] = row[k], row[pj]
            sign = -sign
        pv = M[k][k]
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                M[i][j] = poly_exact_div(M[i][j] * pv - M[i][k] * M[k][j], prev)
            M[i][k] = RatPoly.zero(nparams)
        prev = pv
    return M[m - 1][m - 1] * sign


def minor_poly(mat: SparseMatrix, rows: Sequence[int], cols: Sequence[int], nparams: int) -> RatPoly:
    """The determinant of the submatrix on the given row/column positions."""
    lookup = {}
    for (r, c), e in mat.entries.items():
        lookup[(r, c)] = e
    zero = RatPoly.zero(nparams)
    cells = []
    for r in rows:
        row = []
        for c in cols:
            e = lookup.get((r, c))
            if e is None:
                row.append(zero)
            elif e.param:
                row.append(RatPoly.var(nparams, e.param, e.sign))
            else:
                row.append(RatPoly.const(nparams, e.sign))
        cells.append(row)
    return det_symbolic(cells, nparams)


def _eliminate_constant_pivots(
    cells: list[list[RatPoly]], nparams: int
) -> tuple[list[list[RatPoly]], int]:
    """Clear nonzero-constant pivots by invertible row/column operations.

    Determinantal ideals are preserved: after k pivots the matrix is
    equivalent to [[I_k, 0], [0, M']] and I_r(M) = I_(r-k)(M').  Returns
    (M' with zero rows/columns pruned, k).
    """
    M = [row[:] for row in cells]
    k = 0
    while True:
        pivot = None
        for i, row in enumerate(M):
            for j, p in enumerate(row):
                if p and p.is_constant():
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i0, j0 = pivot
        c = M[i0][j0].terms[(0,) * nparams]
        inv = 1 / c
        M[i0] = [p * inv for p in M[i0]]
        for i, row in enumerate(M):
            if i == i0 or not row[j0]:
                continue
            f = row[j0]
            M[i] = [p - f * q for p, q in zip(row, M[i0])]
        M = [row[:j0] + row[j0 + 1 :] for idx, row in enumerate(M) if idx != i0]
        k += 1
        if not M or not M[0]:
            break
    M = [row for row in M if any(row)]
    if M:
        live_cols = [j for j in range(len(M[0])) if any(row[j] for row in M)]
        M = [[row[j] for j in live_cols] for row in M]
    return M, k


def _structural_supports(mat: SparseMatrix):
    row_support: dict[int, set[int]] = {}
    col_support: dict[int, set[int]] = {}
    for (r, c) in mat.entries:
        row_support.setdefault(r, set()).add(c)
        col_support.setdefault(c, set()).add(r)
    return row_support, col_support


def _sample_structural_minor(
    r: int, rng: random.Random, col_support
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Random (rows, cols) carrying a structural transversal.

    Picks a random r-subset of columns and runs augmenting-path matching;
    column sets without a perfect matching have identically zero minors and
    are resampled.
    """
    cols_all = sorted(c for c in col_support if col_support[c])
    if len(cols_all) < r:
        return None
    for _ in range(16):
        cols = rng.sample(cols_all, r)
        match_row: dict[int, int] = {}

        def augment(c: int, seen: set[int]) -> bool:
            rows = sorted(col_support[c] - seen)
            rng.shuffle(rows)
            for row in rows:
                seen.add(row)
                if row not in match_row or augment(match_row[row], seen):
                    match_row[row] = c
                    return True
            return False

        if all(augment(c, set()) for c in cols):
            return tuple(sorted(match_row)), tuple(sorted(cols))
    return None


def minors_ideal(
    mat: SparseMatrix,
    r: int,
    nparams: int,
    budget: int = 20000,
    seed: int = 0,
    window: int = 32,
) -> tuple[Ideal, bool]:
    """The ideal of r x r minors of ``mat``, plus an exhaustiveness flag.

    Constant pivots are first cleared by invertible operations (preserving
    determinantal ideals), so the actual minor expansion runs on a smaller,
    purely parametric matrix.  All its minors are taken when the count fits
    the budget (flag True); otherwise a randomized sample of structurally
    nonzero index sets is grown until the ideal is stable under
    radical-membership tests for ``window`` consecutive fresh minors.
    """
    from itertools import combinations
    from math import comb

    if r < 0 or r > min(mat.rows, mat.cols):
        raise ValueError("minor size out of range")
    if r == 0:
        return Ideal(nparams, [RatPoly.const(nparams, 1)]), True
    cells, k = _eliminate_constant_pivots(_entry_polys(mat, nparams), nparams)
    r2 = r - k
    if r2 <= 0:
        return Ideal(nparams, [RatPoly.const(nparams, 1)]), True
    m2 = len(cells)
    n2 = len(cells[0]) if m2 else 0
    if r2 > min(m2, n2):
        # rank r is not attained anywhere: every r-minor vanishes identically
        return Ideal(nparams, []), True
    if comb(n2, r2) > comb(m2, r2):
        cells = [list(col) for col in zip(*cells)]
        m2, n2 = n2, m2
    col_support = {
        j: {i for i in range(m2) if cells[i][j]} for j in range(n2)
    }
    total = comb(m2, r2) * comb(n2, r2)
    if total <= budget:
        gens: list[RatPoly] = []
        for rows in combinations(range(m2), r2):
            for cols in combinations(range(n2), r2):
                sub = [[cells[i][j] for j in cols] for i in rows]
                poly = det_symbolic(sub, nparams)
                if poly:
                    gens.append(poly)
        return Ideal(nparams, gens), True
    structural = _structural_minor_indices(m2, r2, col_support, budget)
    if structural is not None:
        gens = []
        for rows, cols in structural:
            sub = [[cells[i][j] for j in cols] for i in rows]
            poly = det_symbolic(sub, nparams)
            if poly:
                gens.append(poly)
        return Ideal(nparams, gens), True
    return _sampled_minors(cells, r2, nparams, col_support, budget, seed, window), False


def _has_r_matching(cols: Sequence[int], col_support, r: int, rows_allowed: set[int] | None = None) -> bool:
    match_row: dict[int, int] = {}

    def augment(c: int, seen: set[int]) -> bool:
        pool = col_support[c] if rows_allowed is None else col_support[c] & rows_allowed
        for row in pool:
            if row in seen:
                continue
            seen.add(row)
            if row not in match_row or augment(match_row[row], seen):
                match_row[row] = c
                return True
        return False

    hits = 0
    for c in cols:
        if augment(c, set()):
            hits += 1
    return hits >= r


def _structural_minor_indices(m2: int, r2: int, col_support, budget: int):
    """All (rows, cols) index pairs with a structural transversal.

    Returns None when the enumeration would overrun the budget; the caller
    then falls back to randomized sampling.
    """
    from itertools import combinations
    from math import comb

    n2 = len(col_support)
    if comb(n2, r2) > 4 * budget:
        return None
    out: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    for cols in combinations(range(n2), r2):
        pool = set()
        for c in cols:
            pool |= col_support[c]
        if len(pool) < r2:
            continue
        if not _has_r_matching(cols, col_support, r2):
            continue
        for rows in combinations(sorted(pool), r2):
            rowset = set(rows)
            if all(col_support[c] & rowset for c in cols) and _has_r_matching(
                cols, col_support, r2, rowset
            ):
                out.append((rows, cols))
                if len(out) > budget:
                    return None
    return out


def _sampled_minors(
    cells: list[list[RatPoly]],
    r: int,
    nparams: int,
    col_support: dict[int, set[int]],
    budget: int,
    seed: int,
    window: int,
) -> Ideal:
    from . import groebner  # runtime import; groebner only depends on polys

    rng = random.Random(f"minors:{seed}")
    ideal = Ideal(nparams, [])
    basis = None
    stable = 0
    seen: set[tuple] = set()
    attempts = 0
    max_attempts = max(budget, 4000)
    while stable < window and attempts < max_attempts:
        attempts += 1
        pick = _sample_structural_minor(r, rng, col_support)
        if pick is None:
            break
        if pick in seen:
            continue  # duplicates are not fresh evidence
        seen.add(pick)
        rows, cols = pick
        sub = [[cells[i][j] for j in cols] for i in rows]
        poly = det_symbolic(sub, nparams)
        if not poly:
            continue
        if basis is not None and groebner.normal_form(poly, basis) == RatPoly.zero(nparams):
            stable += 1
            continue
        member = False
        if ideal.gens:
            member, _ = groebner.radical_member_detailed(poly, ideal)
        if member:
            stable += 1
            continue
        ideal = Ideal(nparams, list(ideal.gens) + [poly])
        try:
            basis = groebner.buchberger(ideal)
        except groebner.GroebnerCap:
            basis = None
        stable = 0
    return ideal
