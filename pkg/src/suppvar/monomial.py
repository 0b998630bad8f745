"""Monomial arithmetic, subset combinatorics, and the sign calculus.

Generator subsets are plain ints used as bitmasks: bit ``i-1`` stands for
generator ``i``.  Everything downstream (complexes, diagrams, the support
engine) speaks this bitmask dialect.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_GENERATORS = 16


def bits(mask: int) -> Iterator[int]:
    """Yield the 1-based generator indices present in ``mask``, ascending."""
    i = 1
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, in increasing numeric order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


class Monomial:
    """A sparse monomial: exponent map over variables 1..d, no zero exponents."""

    __slots__ = ("exps",)

    def __init__(self, exps: Iterable[tuple[int, int]] | dict[int, int] = ()):
        if isinstance(exps, dict):
            items = exps.items()
        else:
            items = exps
        cleaned = sorted((v, e) for v, e in items if e != 0)
        for v, e in cleaned:
            if v < 1 or e < 0:
                raise ValueError(f"bad factor x{v}^{e}")
        self.exps: tuple[tuple[int, int], ...] = tuple(cleaned)

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self.exps == other.exps

    def __hash__(self) -> int:
        return hash(self.exps)

    def __bool__(self) -> bool:
        return bool(self.exps)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(v for v, _ in self.exps)

    def exponent(self, var: int) -> int:
        for v, e in self.exps:
            if v == var:
                return e
        return 0

    def lcm(self, other: "Monomial") -> "Monomial":
        out = dict(self.exps)
        for v, e in other.exps:
            if e > out.get(v, 0):
                out[v] = e
        return Monomial(out)

    def mul(self, other: "Monomial") -> "Monomial":
        out = dict(self.exps)
        for v, e in other.exps:
            out[v] = out.get(v, 0) + e
        return Monomial(out)

    def divides(self, other: "Monomial") -> bool:
        it = dict(other.exps)
        return all(it.get(v, 0) >= e for v, e in self.exps)

    def coprime(self, other: "Monomial") -> bool:
        return not (self.support & other.support)

    def __repr__(self) -> str:
        return f"Monomial({self})"

    def __str__(self) -> str:
        if not self.exps:
            return "1"
        return "*".join(f"x{v}" if e == 1 else f"x{v}^{e}" for v, e in self.exps)


@dataclass(frozen=True)
class SubsetData:
    """Cached per-subset invariants of a generating sequence."""

    J: int
    fJ: Monomial
    degJ: int
    MJ: int
    classRep: int  # canonical representative of the M-class (= MJ itself)


class MonomialSeq:
    """An ordered sequence f_1..f_n of non-unit monomials in d variables.

    Subset lcms f_J and closures M_J are cached for all 2^n subsets on first
    use.  Instances are immutable; the caches are filled once and only read
    afterwards, so sharing across threads is safe.
    """

    def __init__(self, gens: Iterable[Monomial], d: int | None = None):
        self.gens: tuple[Monomial, ...] = tuple(gens)
        self.n = len(self.gens)
        if not 1 <= self.n <= MAX_GENERATORS:
            raise ValueError(f"need 1..{MAX_GENERATORS} generators, got {self.n}")
        for g in self.gens:
            if g.degree < 1:
                raise ValueError("generators must be non-units")
        max_var = max((v for g in self.gens for v, _ in g.exps), default=0)
        self.d = max_var if d is None else d
        if self.d < max_var:
            raise ValueError(f"d={d} smaller than largest variable index {max_var}")
        self._fJ: list[Monomial] | None = None
        self._MJ: list[int] | None = None
        self._ksgn: dict[int, int] = {}

    def _fill(self) -> None:
        if self._fJ is not None:
            return
        size = 1 << self.n
        fJ: list[Monomial] = [Monomial()] * size
        for m in range(1, size):
            low = m & -m
            fJ[m] = fJ[m ^ low].lcm(self.gens[low.bit_length() - 1])
        MJ = [0] * size
        for m in range(size):
            f = fJ[m]
            MJ[m] = mask_of(j for j in range(1, self.n + 1) if self.gens[j - 1].divides(f))
        self._fJ, self._MJ = fJ, MJ

    # -- subset combinatorics ------------------------------------------------

    def lcm_subset(self, J: int) -> Monomial:
        """f_J, the componentwise max of exponents over j in J (f_empty = 1)."""
        self._check(J)
        self._fill()
        return self._fJ[J]

    def m_closure(self, J: int) -> int:
        """M_J = { j : f_j divides f_J }.  Idempotent."""
        self._check(J)
        self._fill()
        return self._MJ[J]

    def s_class(self, J: int) -> list[int]:
        """All K with f_K = f_J, in increasing bitmask order.

        Every such K is a subset of M_J, so only subsets of M_J are scanned.
        """
        self._check(J)
        self._fill()
        fj = self._fJ[J]
        M = self._MJ[J]
        return sorted(K for K in submasks(M) if self._fJ[K] == fj)

    def subset_data(self, J: int) -> SubsetData:
        f = self.lcm_subset(J)
        M = self.m_closure(J)
        return SubsetData(J=J, fJ=f, degJ=f.degree, MJ=M, classRep=M)

    # -- sign calculus -------------------------------------------------------

    def ksgn(self, J: int) -> int:
        """(-1)^(number of elements of J at even 1-based positions of sort(M_J))."""
        self._check(J)
        cached = self._ksgn.get(J)
        if cached is not None:
            return cached
        M = self.m_closure(J)
        count = 0
        pos = 0
        for v in bits(M):
            pos += 1
            if pos % 2 == 0 and (J >> (v - 1)) & 1:
                count += 1
        val = -1 if count % 2 else 1
        self._ksgn[J] = val
        return val

    def ksgn_pair(self, j: int, J: int) -> int:
        """ksgn(j, J) = ksgn(J) * ksgn({j} u J), for j not in J."""
        if (J >> (j - 1)) & 1:
            raise ValueError(f"generator {j} already in subset")
        return self.ksgn(J) * self.ksgn(J | 1 << (j - 1))

    def is_homogeneous(self) -> bool:
        degs = {g.degree for g in self.gens}
        return len(degs) == 1

    def _check(self, J: int) -> None:
        if J < 0 or J >> self.n:
            raise ValueError(f"subset {J:#x} has bits beyond n={self.n}")

    # -- misc ----------------------------------------------------------------

    def permuted(self, perm: dict[int, int]) -> "MonomialSeq":
        """Reorder generators: new position perm[i] holds old generator i."""
        out: list[Monomial | None] = [None] * self.n
        for i, g in enumerate(self.gens, start=1):
            out[perm[i] - 1] = g
        return MonomialSeq(out, d=self.d)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MonomialSeq)
            and self.gens == other.gens
            and self.d == other.d
        )

    def __hash__(self) -> int:
        return hash((self.gens, self.d))

    def __repr__(self) -> str:
        return f"MonomialSeq({self})"

    def __str__(self) -> str:
        return ",".join(str(g) for g in self.gens)


def sgn_perm(seq: Iterable[int]) -> int:
    """Sign of the permutation sorting ``seq`` ascending (entries distinct)."""
    items = list(seq)
    if len(set(items)) != len(items):
        raise ValueError("entries must be distinct")
    inversions = 0
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


def sgn_prepend(j: int, J: int) -> int:
    """sgn of the ordered set (j, sorted J): parity of #{p in J : p < j}."""
    below = popcount(J & ((1 << (j - 1)) - 1))
    return -1 if below % 2 else 1


def rsort_concat_sign(J: int, M: int) -> int:
    """sgn(rsort(J) . sort(M\\J)) -- the alternate ksgn formula."""
    left = sorted(bits(J), reverse=True)
    right = sorted(bits(M & ~J))
    return sgn_perm(left + right)
