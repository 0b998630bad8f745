"""The support engine: membership oracles, symbolic supports, classification.

The cohomological support of R = Q/(f) is the locus of parameter points a
where the twisted complex has nonzero homology, together with the origin.
Two engines answer pointwise membership: the 2-periodic oracle on the full
2^n basis ("chat"), and the graded totalization when a weak grading exists.
The symbolic route computes, per connected component, the generic rank of
every differential and the determinantal ideals of the rank-drop loci.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .complexes import (
    Obstruction,
    SparseMatrix,
    TotalComplex,
    chat_complex,
    components,
    restrict_total,
    subcomplex_diagram,
    totalization,
    weak_grading,
)
from .config import RunConfig
from .groebner import (
    Different,
    EqualCertified,
    EqualRandomized,
    GroebnerCap,
    _sample_variety_point,
    buchberger,
    normal_form,
    radical_member_detailed,
    varieties_equal,
)
from .linalg import FieldPoint, evaluate, generic_rank, minors_ideal, rank_exact, rank_mod_p
from .monomial import MonomialSeq
from .polys import Ideal, RatPoly


class NonGradableError(ValueError):
    def __init__(self, obstruction: Obstruction):
        super().__init__("subcomplex diagram admits no weak grading")
        self.obstruction = obstruction


# ---------------------------------------------------------------------------
# Pointwise membership
# ---------------------------------------------------------------------------


class _FastMatrix:
    """A SparseMatrix flattened into arrays for quick evaluation at points."""

    __slots__ = ("rows", "cols", "r", "c", "sign", "param")

    def __init__(self, mat: SparseMatrix):
        self.rows, self.cols = mat.shape
        items = sorted(mat.entries.items())
        self.r = np.array([k[0] for k, _ in items], dtype=np.int64)
        self.c = np.array([k[1] for k, _ in items], dtype=np.int64)
        self.sign = np.array([e.sign for _, e in items], dtype=np.int64)
        self.param = np.array([e.param for _, e in items], dtype=np.int64)

    def at(self, coords: np.ndarray, p: int) -> np.ndarray:
        ext = np.concatenate(([1], np.remainder(coords, p)))
        vals = np.remainder(self.sign * ext[self.param], p)
        out = np.zeros((self.rows, self.cols), dtype=np.int64)
        out[self.r, self.c] = vals
        return out

    def at_exact(self, coords) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        ext = [Fraction(1)] + [Fraction(x) for x in coords]
        for r, c, s, q in zip(self.r, self.c, self.sign, self.param):
            out[r][c] = int(s) * ext[int(q)]
        return out


@dataclass
class _GradedEngine:
    dims: dict[int, int]
    mats: dict[int, _FastMatrix]  # degree -> matrix into degree-1

    def homology_nonzero(self, coords, p: int) -> bool:
        ranks: dict[int, int] = {}
        for d in sorted(self.mats, reverse=True):
            fm = self.mats[d]
            if p:
                ranks[d] = rank_mod_p(fm.at(np.asarray(coords, dtype=np.int64), p), p)
            else:
                ranks[d] = rank_exact(fm.at_exact(coords))
            # early exit once the piece above this differential is deficient
            up = ranks.get(d + 1, 0 if (d + 1) not in self.mats else None)
            if up is not None and ranks[d] + up < self.dims.get(d, 0):
                return True
        return any(
            ranks.get(d, 0) + ranks.get(d + 1, 0) < dim for d, dim in self.dims.items()
        )


class MembershipTester:
    """Evaluates support membership at many points with one-time setup."""

    def __init__(self, seq: MonomialSeq, engine: str = "auto", config: RunConfig | None = None):
        config = config or RunConfig()
        self.seq = seq
        self.n = seq.n
        diag = grading = None
        if engine in ("auto", "totalization"):
            diag = subcomplex_diagram(seq)
            grading = weak_grading(diag)
            if engine == "auto":
                engine = "chat" if isinstance(grading, Obstruction) else "totalization"
        self.engine = engine
        if engine == "chat":
            if seq.n > config.chat_cap:
                raise ValueError(f"chat oracle capped at n <= {config.chat_cap}")
            eo, oe = chat_complex(seq)
            self._chat = (_FastMatrix(eo), _FastMatrix(oe))
            self._graded: list[_GradedEngine] = []
        elif engine == "totalization":
            if isinstance(grading, Obstruction):
                raise NonGradableError(grading)
            total = totalization(seq, grading)
            self._chat = None
            self._graded = []
            for comp in components(diag):
                sub = restrict_total(total, seq, comp)
                dims = {d: sub.dim(d) for d in sub.degrees()}
                mats = {
                    d: _FastMatrix(m) for d, m in sub.diffs.items() if m.rows and m.cols
                }
                self._graded.append(_GradedEngine(dims, mats))
        else:
            raise ValueError("engine must be 'chat', 'totalization', or 'auto'")

    def is_member(self, pt: FieldPoint) -> bool:
        """True iff the evaluated complex has nonzero homology, or pt = 0."""
        if pt.is_zero():
            return True
        if self._chat is not None:
            eo, oe = self._chat
            if pt.char:
                coords = np.asarray(pt.coords, dtype=np.int64)
                r1 = rank_mod_p(eo.at(coords, pt.char), pt.char)
                r2 = rank_mod_p(oe.at(coords, pt.char), pt.char)
            else:
                r1 = rank_exact(eo.at_exact(pt.coords))
                r2 = rank_exact(oe.at_exact(pt.coords))
            return r1 + r2 < eo.cols
        return any(g.homology_nonzero(pt.coords, pt.char) for g in self._graded)


def membership_oracle(
    seq: MonomialSeq, pt: FieldPoint, engine: str = "auto", config: RunConfig | None = None
) -> bool:
    return MembershipTester(seq, engine, config).is_member(pt)


# ---------------------------------------------------------------------------
# Variety descriptions and classification
# ---------------------------------------------------------------------------

FULL_SPACE = "full_space"
ORIGIN_ONLY = "origin_only"
UNION = "union"


@dataclass(frozen=True)
class VarietyDescription:
    kind: str
    n: int
    components: tuple[Ideal, ...] = ()

    def __str__(self) -> str:
        if self.kind == FULL_SPACE:
            return f"A^{self.n}"
        if self.kind == ORIGIN_ONLY:
            return "{0}"
        return " u ".join(f"V{c}" for c in self.components)


@dataclass
class ComponentReport:
    index: int
    classes: tuple[int, ...]
    dims: dict[int, int]
    generic_ranks: dict[int, int]
    ideals: tuple[Ideal, ...]
    exhaustive_minors: bool
    generically_exact: bool


@dataclass
class SupportReport:
    n: int
    variety: VarietyDescription
    per_component: list[ComponentReport]
    certification: str  # "certified" | "randomized"
    fail_probability: float
    engine: str
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "kind": self.variety.kind,
            "components": [
                {"generators": [str(g) for g in ideal.gens]}
                for ideal in self.variety.components
            ],
            "certification": self.certification,
            "fail_probability": self.fail_probability,
            "engine": self.engine,
            "generic_ranks": {
                str(c.index): {str(d): [c.dims.get(d, 0), r] for d, r in sorted(c.generic_ranks.items())}
                for c in self.per_component
            },
            "notes": list(self.notes),
        }


LINEAR_SUBSPACE = "LinearSubspace"
UNION_TWO_HYPERPLANES = "UnionTwoHyperplanes"
SEXTIC_135246 = "Sextic135246"
CLASS_FULL = "FullSpace"
CLASS_ORIGIN = "OriginOnly"


@dataclass(frozen=True)
class Classification:
    kind: str
    description: str = ""

    def __str__(self) -> str:
        return self.kind if not self.description else f"{self.kind}({self.description})"


def _is_var(p: RatPoly) -> int | None:
    if len(p.terms) != 1:
        return None
    exp, _ = next(iter(p.terms.items()))
    if sum(exp) != 1:
        return None
    return exp.index(1) + 1


def _hyperplane_pair(p: RatPoly) -> tuple[int, int] | None:
    """Indices (i, j), i != j, when p is a scalar multiple of a_i * a_j."""
    if len(p.terms) != 1:
        return None
    exp, _ = next(iter(p.terms.items()))
    if sum(exp) != 2 or max(exp) != 1:
        return None
    i, j = (k + 1 for k, e in enumerate(exp) if e)
    return i, j


def _sextic_pattern(p: RatPoly) -> bool:
    """Is p proportional to a_A + a_B for complementary triples A, B of [6]?"""
    if p.n != 6 or len(p.terms) != 2:
        return False
    (e1, c1), (e2, c2) = p.terms.items()
    if c1 != c2:
        return False
    for e in (e1, e2):
        if sum(e) != 3 or max(e) != 1:
            return False
    return all(a + b == 1 for a, b in zip(e1, e2))


def classify(v: VarietyDescription) -> Classification:
    if v.kind == FULL_SPACE:
        return Classification(CLASS_FULL)
    if v.kind == ORIGIN_ONLY:
        return Classification(CLASS_ORIGIN)
    comps = v.components
    if all(all(_is_var(g) is not None for g in I.gens) for I in comps):
        if len(comps) == 1:
            return Classification(LINEAR_SUBSPACE)
        if len(comps) == 2 and all(len(I.gens) == 1 for I in comps):
            return Classification(UNION_TWO_HYPERPLANES)
        return Classification("Other", f"union of {len(comps)} coordinate subspaces")
    if len(comps) == 1 and len(comps[0].gens) == 1:
        g = comps[0].gens[0]
        if _hyperplane_pair(g) is not None:
            return Classification(UNION_TWO_HYPERPLANES)
        if _sextic_pattern(g):
            return Classification(SEXTIC_135246)
    return Classification("Other", str(v))


# ---------------------------------------------------------------------------
# Symbolic support
# ---------------------------------------------------------------------------


def _pattern_candidates(n: int, raw: Ideal) -> list[RatPoly]:
    """Presentable hypersurface candidates to test against a raw ideal."""
    out: list[RatPoly] = []
    for i, j in itertools.combinations(range(1, n + 1), 2):
        out.append(RatPoly.monomial(n, (i, j)))
    if n == 6:
        universe = frozenset(range(1, 7))
        for A in itertools.combinations(range(1, 7), 3):
            if 1 in A:  # each split counted once
                B = tuple(sorted(universe - set(A)))
                out.append(RatPoly.monomial(n, A) + RatPoly.monomial(n, B))
    # square/cube roots of single generators often reveal the radical shape
    for g in raw.gens:
        for k in (2, 3):
            root = _poly_root(g, k)
            if root is not None and all(not root == o for o in out):
                out.append(root)
    return out


def _poly_root(g: RatPoly, k: int) -> RatPoly | None:
    """h with h^k proportional to g, if one exists (small search)."""
    if len(g.terms) < 2:
        return None
    exp, coeff = g.lead()
    if any(e % k for e in exp):
        return None
    root_lead = tuple(e // k for e in exp)
    # guess the other extreme term as the trailing monomial
    trail = min(g.terms, key=lambda e: (sum(e), tuple(-x for x in reversed(e))))
    if trail == exp or any(e % k for e in trail):
        return None
    h = RatPoly(g.n, {root_lead: Fraction(1), tuple(e // k for e in trail): Fraction(1)})
    hk = h
    for _ in range(k - 1):
        hk = hk * h
    lead_ratio = coeff / hk.terms.get(exp, Fraction(0)) if hk.terms.get(exp) else None
    if lead_ratio and hk * lead_ratio == g:
        return h
    # retry with a sign flip on the trailing term
    h2 = RatPoly(g.n, {root_lead: Fraction(1), tuple(e // k for e in trail): Fraction(-1)})
    hk = h2
    for _ in range(k - 1):
        hk = hk * h2
    lead_ratio = coeff / hk.terms.get(exp, Fraction(0)) if hk.terms.get(exp) else None
    if lead_ratio and hk * lead_ratio == g:
        return h2
    return None


def _divides_poly(d: RatPoly, g: RatPoly) -> bool:
    from .linalg import poly_exact_div

    try:
        poly_exact_div(g, d)
        return True
    except ArithmeticError:
        return False


@dataclass
class _Normalized:
    ideal: Ideal | None  # None: contributes nothing beyond the origin
    certified: bool


def _normalize_ideal(raw: Ideal, config: RunConfig) -> _Normalized:
    """Replace a raw degeneracy ideal by a presentable equal-variety form."""
    n = raw.n
    if raw.has_unit():
        return _Normalized(None, True)
    certified = True
    # which coordinate hyperplanes contain V(raw)?
    axes: list[int] = []
    for i in range(1, n + 1):
        member, cert = radical_member_detailed(RatPoly.var(n, i), raw, config.groebner_caps)
        certified = certified and cert
        if member:
            axes.append(i)
    if len(axes) == n:
        return _Normalized(None, certified)  # V = {0}
    if axes and all(not g.substitute_zero(axes) for g in raw.gens):
        return _Normalized(Ideal(n, [RatPoly.var(n, i) for i in axes]), certified)
    if not axes:
        for cand in _pattern_candidates(n, raw):
            if not all(_divides_poly(cand, g) or _radical_in_principal(g, cand) for g in raw.gens):
                continue
            member, cert = radical_member_detailed(cand, raw, config.groebner_caps)
            if member:
                return _Normalized(Ideal(n, [cand]), certified and cert)
            certified = certified and cert
    return _Normalized(raw, certified)


def _radical_in_principal(g: RatPoly, b: RatPoly) -> bool:
    """g in sqrt((b)) for squarefree-ish b, via a bounded power check."""
    from .linalg import poly_exact_div

    power = g
    for _ in range(3):
        if _divides_poly(b, power):
            return True
        power = power * g
    return False


def _dedupe_union(ideals: list[Ideal], config: RunConfig) -> tuple[list[Ideal], bool]:
    """Drop union components whose variety lies inside another's."""
    certified = True
    items = sorted(set(ideals), key=str)

    def contains(J: Ideal, I: Ideal) -> bool:
        """V(I) inside V(J)?"""
        nonlocal certified
        for g in J.gens:
            member, cert = radical_member_detailed(g, I, config.groebner_caps)
            certified = certified and cert
            if not member:
                return False
        return True

    keep: list[Ideal] = []
    for i, I in enumerate(items):
        drop = False
        for j, J in enumerate(items):
            if i == j:
                continue
            if contains(J, I):
                if i < j and contains(I, J):
                    continue  # equal varieties: the earlier one survives
                drop = True
                break
        if not drop:
            keep.append(I)
    return keep, certified


def _max_coordinate_subspaces(
    seq: MonomialSeq, tester: "MembershipTester", config: RunConfig
) -> list[Ideal]:
    """Maximal coordinate subspaces inside the support, by the point oracle.

    V(a_i : i in K) lies in the (closed, conical) support iff its generic
    points are members; each K is tested at random points over several large
    primes, walking K by size so only maximal subspaces are kept.
    """
    n = seq.n
    rng = random.Random(f"coord-scan:{config.seed}")
    found: list[frozenset[int]] = []
    for size in range(0, n):
        for K in itertools.combinations(range(1, n + 1), size):
            Kset = frozenset(K)
            if any(f <= Kset for f in found):
                continue
            member = True
            for p in config.primes:
                for _ in range(3):
                    coords = [0] * n
                    for i in range(1, n + 1):
                        if i not in Kset:
                            coords[i - 1] = rng.randrange(1, p)
                    if not tester.is_member(FieldPoint(p, tuple(coords))):
                        member = False
                        break
                if not member:
                    break
            if member:
                found.append(Kset)
    return [
        Ideal(n, [RatPoly.var(n, i) for i in sorted(K)]) for K in found
    ]


def _on_variety_spot_check(
    ideal: Ideal, tester: "MembershipTester", config: RunConfig, points: int = 8
) -> bool:
    """Do sampled points of V(ideal) test as support members?"""
    rng = random.Random(f"spot:{config.seed}:{ideal}")
    checked = 0
    for p in config.primes:
        for _ in range(points * 3):
            pt = _sample_variety_point(ideal, p, rng)
            if pt is None:
                pt = _rejection_variety_point(ideal, p, rng, cap=200)
            if pt is None or all(x % p == 0 for x in pt):
                continue  # the origin is a member by fiat, not evidence
            checked += 1
            if not tester.is_member(FieldPoint(p, pt)):
                return False
            if checked >= points:
                break
        if checked >= points:
            break
    return True


def support_symbolic(seq: MonomialSeq, config: RunConfig | None = None, engine: str = "totalization") -> SupportReport:
    """Symbolic support via generic ranks and determinantal rank-drop loci.

    When every minors ideal is exhaustive the result is certified purely by
    the determinantal route.  Sampled minors only bound the loci from above,
    so in that case the membership oracle additionally pins down the maximal
    coordinate subspaces of the support, sampled components are spot-checked
    against the oracle, and the assembled union is validated at uniform
    random points.
    """
    config = config or RunConfig()
    n = seq.n
    notes: list[str] = []
    if engine == "totalization":
        diag = subcomplex_diagram(seq)
        grading = weak_grading(diag)
        if isinstance(grading, Obstruction):
            raise NonGradableError(grading)
        total = totalization(seq, grading)
        comps = components(diag)
        subs = [restrict_total(total, seq, comp) for comp in comps]
        comp_classes = [tuple(sorted(c)) for c in comps]
    elif engine == "chat":
        eo, oe = chat_complex(seq)
        subs = [None]
        comp_classes = [()]
    else:
        raise ValueError("engine must be 'totalization' or 'chat'")

    per: list[ComponentReport] = []
    raw_ideals: list[tuple[Ideal, bool]] = []
    full = False
    certified = True
    for idx in range(len(subs)):
        if engine == "chat":
            dims = {0: eo.cols, 1: oe.cols}
            mats = {0: eo, 1: oe}
            # exactness of the 2-periodic complex: ranks must sum to the dim
            ranks = {
                d: generic_rank(m, n, seed=config.seed, primes=config.primes)
                for d, m in mats.items()
            }
            exact = ranks[0] + ranks[1] == eo.cols
        else:
            sub = subs[idx]
            dims = {d: sub.dim(d) for d in sub.degrees()}
            mats = {d: m for d, m in sub.diffs.items() if m.rows and m.cols}
            ranks = {
                d: generic_rank(m, n, seed=config.seed, primes=config.primes)
                for d, m in mats.items()
            }
            exact = all(
                ranks.get(d, 0) + ranks.get(d + 1, 0) == dim for d, dim in dims.items()
            )
        exhaustive = True
        ideals: list[Ideal] = []
        if exact:
            for d, m in sorted(mats.items()):
                r = ranks[d]
                if r == 0:
                    continue
                ide, complete = minors_ideal(
                    m, r, n,
                    budget=config.minor_budget,
                    seed=config.seed,
                    window=config.stabilize_window,
                )
                exhaustive = exhaustive and complete
                if not ide.has_unit():
                    ideals.append(ide)
                    raw_ideals.append((ide, complete))
        else:
            full = True
        per.append(
            ComponentReport(
                index=idx,
                classes=comp_classes[idx],
                dims=dims,
                generic_ranks=ranks,
                ideals=tuple(ideals),
                exhaustive_minors=exhaustive,
                generically_exact=exact,
            )
        )
        certified = certified and exhaustive

    if full:
        variety = VarietyDescription(FULL_SPACE, n)
    else:
        normalized: list[Ideal] = []
        sampled_present = any(not complete for _, complete in raw_ideals)
        tester = MembershipTester(seq, engine, config) if sampled_present else None
        for raw, complete in raw_ideals:
            norm = _normalize_ideal(raw, config)
            certified = certified and norm.certified
            if norm.ideal is None:
                continue
            if not complete:
                # a sampled ideal only bounds the locus from above; keep its
                # normalized form only when the oracle confirms its points
                if not _on_variety_spot_check(norm.ideal, tester, config):
                    notes.append(f"dropped unconfirmed sampled locus {norm.ideal}")
                    continue
            normalized.append(norm.ideal)
        if sampled_present:
            normalized.extend(_max_coordinate_subspaces(seq, tester, config))
        kept, cert2 = _dedupe_union(normalized, config)
        certified = certified and cert2
        if not kept:
            variety = VarietyDescription(ORIGIN_ONLY, n)
        else:
            variety = VarietyDescription(UNION, n, tuple(kept))
        if sampled_present:
            witness = _uniform_agreement_sweep(seq, kept, tester, config)
            if witness is not None:
                notes.append(f"partial: support disagrees with union at {witness}")
    return SupportReport(
        n=n,
        variety=variety,
        per_component=per,
        certification="certified" if certified else "randomized",
        fail_probability=0.0 if certified else 2.0**-40,
        engine=engine,
        notes=tuple(notes),
    )


# ---------------------------------------------------------------------------
# Randomized verification
# ---------------------------------------------------------------------------


@dataclass
class VerifyReport:
    candidate: str
    engine: str
    primes: tuple[int, ...]
    on_variety_checked: int
    on_variety_agree: int
    uniform_checked: int
    uniform_agree: int
    witness: tuple | None
    fail_probability_bound: float

    @property
    def agreed(self) -> bool:
        return self.witness is None

    def to_json(self) -> dict:
        return {
            "candidate": self.candidate,
            "engine": self.engine,
            "primes": list(self.primes),
            "on_variety": [self.on_variety_agree, self.on_variety_checked],
            "uniform": [self.uniform_agree, self.uniform_checked],
            "witness": list(self.witness) if self.witness else None,
            "fail_probability_bound": self.fail_probability_bound,
            "agreed": self.agreed,
        }


def _uniform_agreement_sweep(
    seq: MonomialSeq, kept: list[Ideal], tester: "MembershipTester", config: RunConfig
):
    """Compare the assembled union against the oracle at uniform points."""
    rng = random.Random(f"sweep:{config.seed}")
    n = seq.n
    per_prime = max(8, config.samples // (4 * len(config.primes)))
    for p in config.primes:
        for _ in range(per_prime):
            pt = tuple(rng.randrange(p) for _ in range(n))
            in_union = all(x % p == 0 for x in pt) or any(
                all(g.evaluate_mod(pt, p) == 0 for g in I.gens) for I in kept
            )
            if tester.is_member(FieldPoint(p, pt)) != in_union:
                return (pt, p)
    return None


def _rejection_variety_point(I: Ideal, p: int, rng: random.Random, cap: int = 2000):
    n = I.n
    for _ in range(cap):
        pt = tuple(rng.randrange(p) for _ in range(n))
        if all(g.evaluate_mod(pt, p) == 0 for g in I.gens):
            return pt
    return None


def support_verify(
    seq: MonomialSeq,
    candidate: Ideal,
    samples: int = 200,
    primes: tuple[int, ...] | None = None,
    seed: int = 0,
    engine: str = "auto",
    config: RunConfig | None = None,
) -> VerifyReport:
    """Two-sided randomized comparison of the support against a candidate.

    (i) points sampled on V(candidate) must be members; (ii) uniform points
    must agree with the candidate's vanishing.  The first disagreement is
    returned as a witness (point, prime, expected, got).
    """
    config = config or RunConfig()
    primes = tuple(primes or config.primes)
    tester = MembershipTester(seq, engine, config)
    rng = random.Random(f"verify:{seed}")
    n = seq.n
    on_checked = on_agree = uni_checked = uni_agree = 0
    witness = None
    for p in primes:
        misses = 0
        for _ in range(samples * 4):
            if on_checked >= samples * (primes.index(p) + 1):
                break
            pt = _sample_variety_point(candidate, p, rng)
            if pt is None:
                # unstructured generators: rejection-sample with a cap
                pt = _rejection_variety_point(candidate, p, rng)
                if pt is None:
                    misses += 1
                    if misses > 50:
                        break
                    continue
            on_checked += 1
            got = tester.is_member(FieldPoint(p, pt))
            if got:
                on_agree += 1
            elif witness is None:
                witness = (pt, p, True, False)
        for _ in range(samples):
            pt = tuple(rng.randrange(p) for _ in range(n))
            uni_checked += 1
            expected = all(g.evaluate_mod(pt, p) == 0 for g in candidate.gens) or all(
                x % p == 0 for x in pt
            )
            got = tester.is_member(FieldPoint(p, pt))
            if got == expected:
                uni_agree += 1
            elif witness is None:
                witness = (pt, p, expected, got)
    # Schwartz-Zippel style bound: a discrepancy locus has codimension >= 1
    # and degree <= D in the sampled space; two independent hits miss it with
    # probability <= (D/p)^2, and extra samples only sharpen the bound.
    D = 1 << max(0, seq.n - 1)
    worst = max((min(1.0, D / p)) for p in primes)
    k = max(2, min(on_checked, uni_checked))
    bound = min(1.0, worst ** min(k, 64))
    return VerifyReport(
        candidate=", ".join(str(g) for g in candidate.gens),
        engine=tester.engine,
        primes=primes,
        on_variety_checked=on_checked,
        on_variety_agree=on_agree,
        uniform_checked=uni_checked,
        uniform_agree=uni_agree,
        witness=witness,
        fail_probability_bound=bound,
    )
