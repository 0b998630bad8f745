"""A minimal Groebner kernel: Buchberger, normal forms, radical membership.

Coefficients are exact: content-free integers over Q, or residues mod a
prime when ``modulus`` is set.  The default order is degrevlex; radical
membership adjoins the Rabinowitsch variable t under a block order t >> a.
"""

from __future__ import annotations

import heapq
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .polys import Ideal, RatPoly, drl_key

DEFAULT_CAPS = {
    "max_basis": 300,
    "max_pairs": 20000,
    "max_terms": 200000,
}


class GroebnerCap(RuntimeError):
    """Raised when a Buchberger run exceeds its resource budget."""


# -- term orders -------------------------------------------------------------


def _key_drl(exp: tuple[int, ...]) -> tuple:
    return (sum(exp), tuple(-e for e in reversed(exp)))


def _key_block_t(exp: tuple[int, ...]) -> tuple:
    rest = exp[1:]
    return (exp[0], sum(rest), tuple(-e for e in reversed(rest)))


# -- integer polynomial helpers ----------------------------------------------


def _to_int_poly(p: RatPoly, modulus: int | None) -> dict[tuple[int, ...], int]:
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    out = {e: int(c * den) for e, c in p.terms.items()}
    return _content_normal(out, modulus)


def _content_normal(poly: dict, modulus: int | None) -> dict:
    if not poly:
        return poly
    if modulus:
        out = {e: c % modulus for e, c in poly.items()}
        return {e: c for e, c in out.items() if c}
    g = 0
    for c in poly.values():
        g = gcd(g, c)
    if g > 1:
        return {e: c // g for e, c in poly.items()}
    return dict(poly)


def _lead(poly: dict, key) -> tuple[tuple[int, ...], int]:
    exp = max(poly, key=key)
    return exp, poly[exp]


def _sub_scaled(
    target: dict, scale_t: int, other: dict, scale_o: int, shift: tuple[int, ...],
    modulus: int | None,
) -> dict:
    """scale_t * target - scale_o * x^shift * other, content-normalized."""
    out: dict = {}
    if modulus:
        scale_t %= modulus
        scale_o %= modulus
    for e, c in target.items():
        out[e] = c * scale_t
    for e, c in other.items():
        k = tuple(a + b for a, b in zip(e, shift))
        out[k] = out.get(k, 0) - c * scale_o
    if modulus:
        out = {e: c % modulus for e, c in out.items()}
    return _content_normal({e: c for e, c in out.items() if c}, modulus)


def _divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def normal_form_int(
    f: dict, basis: Sequence[dict], key, modulus: int | None, max_terms: int
) -> dict:
    """Full multivariate pseudo-reduction of f by the basis."""
    leads = [(_lead(g, key)) for g in basis]
    rem: dict = {}
    work = dict(f)
    while work:
        exp, c = _lead(work, key)
        hit = None
        for i, (lexp, lc) in enumerate(leads):
            if _divides(lexp, exp):
                hit = (i, lexp, lc)
                break
        if hit is None:
            rem[exp] = c
            del work[exp]
            continue
        i, lexp, lc = hit
        shift = tuple(a - b for a, b in zip(exp, lexp))
        if modulus:
            factor = c * pow(lc, -1, modulus) % modulus
            work = _sub_scaled(work, 1, basis[i], factor, shift, modulus)
        else:
            g0 = gcd(c, lc)
            scale_w, scale_g = lc // g0, c // g0
            if scale_w != 1:
                rem = {e: v * scale_w for e, v in rem.items()}
            work = _sub_scaled(work, scale_w, basis[i], scale_g, shift, None)
        if len(work) + len(rem) > max_terms:
            raise GroebnerCap("term explosion during reduction")
    return _content_normal(rem, modulus)


def _spoly(f: dict, g: dict, key, modulus: int | None) -> dict:
    (ef, cf), (eg, cg) = _lead(f, key), _lead(g, key)
    l = tuple(max(a, b) for a, b in zip(ef, eg))
    if modulus:
        sf, sg = cg, cf
    else:
        g0 = gcd(cf, cg)
        sf, sg = cg // g0, cf // g0
    out: dict = {}
    for e, c in f.items():
        k = tuple(a + b for a, b in zip(e, tuple(x - y for x, y in zip(l, ef))))
        out[k] = out.get(k, 0) + c * sf
    for e, c in g.items():
        k = tuple(a + b for a, b in zip(e, tuple(x - y for x, y in zip(l, eg))))
        out[k] = out.get(k, 0) - c * sg
    if modulus:
        out = {e: c % modulus for e, c in out.items()}
    return _content_normal({e: c for e, c in out.items() if c}, modulus)


def groebner_int(
    polys: Iterable[dict], key, modulus: int | None = None, caps: dict | None = None
) -> list[dict]:
    """Buchberger with the sugar selection strategy and standard criteria."""
    caps = {**DEFAULT_CAPS, **(caps or {})}
    seed: list[dict] = []
    for p in polys:
        p = _content_normal(p, modulus)
        if p:
            seed.append(p)
    if not seed:
        return []
    # pre-reduce the input; determinantal ideals often arrive with many
    # redundant generators and the pair loop should not pay for them
    seed = _prereduce(seed, key, modulus, caps["max_terms"])
    basis = list(seed)
    sugars = [max(sum(e) for e in p) for p in basis]
    leads = [_lead(g, key)[0] for g in basis]

    def pair_entry(i: int, j: int):
        l = tuple(max(a, b) for a, b in zip(leads[i], leads[j]))
        sugar = max(
            sugars[i] + sum(l) - sum(leads[i]), sugars[j] + sum(l) - sum(leads[j])
        )
        return (sugar, key(l), i, j, l)

    heap = [pair_entry(i, j) for i in range(len(basis)) for j in range(i)]
    heapq.heapify(heap)
    done: set[tuple[int, int]] = set()
    reductions = 0
    while heap:
        sugar, _, i, j, l = heapq.heappop(heap)
        done.add((min(i, j), max(i, j)))
        # product criterion
        if all(a + b == c for a, b, c in zip(leads[i], leads[j], l)):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not _divides(leads[k], l):
                continue
            if (min(i, k), max(i, k)) in done and (min(j, k), max(j, k)) in done:
                skip = True
                break
        if skip:
            continue
        s = _spoly(basis[i], basis[j], key, modulus)
        if not s:
            continue
        reductions += 1
        if reductions > caps["max_pairs"]:
            raise GroebnerCap("pair budget exceeded")
        r = normal_form_int(s, basis, key, modulus, caps["max_terms"])
        if not r:
            continue
        basis.append(r)
        sugars.append(max(sum(e) for e in r))
        leads.append(_lead(r, key)[0])
        if len(basis) > caps["max_basis"]:
            raise GroebnerCap("basis size exceeded")
        new = len(basis) - 1
        for t in range(new):
            heapq.heappush(heap, pair_entry(t, new))
    return _interreduce(basis, key, modulus, caps["max_terms"])


def _prereduce(polys: list[dict], key, modulus: int | None, max_terms: int) -> list[dict]:
    """Ideal-preserving reduction of raw generators against each other."""
    ordered = sorted(polys, key=lambda p: (key(_lead(p, key)[0]), len(p)))
    out: list[dict] = []
    for p in ordered:
        r = normal_form_int(p, out, key, modulus, max_terms) if out else p
        if r:
            out.append(r)
    return out


def _interreduce(basis: list[dict], key, modulus: int | None, max_terms: int) -> list[dict]:
    # drop redundant leading terms, then tail-reduce
    keep: list[dict] = []
    leads = [_lead(g, key)[0] for g in basis]
    for i, g in enumerate(basis):
        if any(
            j != i
            and _divides(leads[j], leads[i])
            and (leads[j] != leads[i] or j < i)
            for j in range(len(basis))
        ):
            continue
        keep.append(g)
    out: list[dict] = []
    for i, g in enumerate(keep):
        others = out + keep[i + 1 :]
        r = normal_form_int(g, others, key, modulus, max_terms) if others else g
        if r:
            out.append(r)
    return out


# -- public surface over RatPoly/Ideal ----------------------------------------


def _from_int_poly(poly: dict, n: int) -> RatPoly:
    return RatPoly(n, {e: Fraction(c) for e, c in poly.items()})


def buchberger(ideal: Ideal, caps: dict | None = None) -> Ideal:
    """Degrevlex Groebner basis of the ideal.  Raises GroebnerCap on budget."""
    if ideal.n > 16:
        raise ValueError("parameter count capped at 16")
    if ideal.gens and all(len(g.terms) == 1 for g in ideal.gens):
        # a monomial generating set is already a Groebner basis; keep the
        # divisibility-minimal generators
        exps = [next(iter(g.terms)) for g in ideal.gens]
        minimal = [
            e for e in exps
            if not any(f != e and all(x <= y for x, y in zip(f, e)) for f in exps)
        ]
        return Ideal(ideal.n, [RatPoly(ideal.n, {e: Fraction(1)}) for e in set(minimal)])
    gb = groebner_int([_to_int_poly(g, None) for g in ideal.gens], _key_drl, None, caps)
    return Ideal(ideal.n, [_from_int_poly(g, ideal.n) for g in gb])


def normal_form(p: RatPoly, basis: Ideal | Sequence[RatPoly]) -> RatPoly:
    """Remainder of p modulo a (Groebner) basis under degrevlex."""
    gens = list(basis.gens if isinstance(basis, Ideal) else basis)
    if not gens:
        return p
    r = normal_form_int(
        _to_int_poly(p, None),
        [_to_int_poly(g, None) for g in gens],
        _key_drl,
        None,
        DEFAULT_CAPS["max_terms"],
    )
    return _from_int_poly(r, p.n)


def _lift_t(poly: dict, tdeg: int = 0) -> dict:
    return {(tdeg, *e): c for e, c in poly.items()}


def _rabinowitsch_is_member(
    p: RatPoly, ideal: Ideal, modulus: int | None, caps: dict | None
) -> bool:
    """1 in I + (1 - t*p) under the block order t >> a?"""
    gens = [_lift_t(_to_int_poly(g, modulus)) for g in ideal.gens]
    pt = {(1, *e): -c for e, c in _to_int_poly(p, modulus).items()}
    one = (0,) * (ideal.n + 1)
    pt[one] = pt.get(one, 0) + 1
    gens.append(_content_normal(pt, modulus))
    gb = groebner_int(gens, _key_block_t, modulus, caps)
    return any(len(g) == 1 and sum(next(iter(g))) == 0 for g in gb)


def _monomial_support(p: RatPoly) -> frozenset[int] | None:
    if len(p.terms) != 1:
        return None
    (exp,) = p.terms
    return frozenset(i for i, e in enumerate(exp) if e)


def _radical_member_monomial(p: RatPoly, supports: list[frozenset[int]]) -> bool:
    """Membership in the radical of a monomial ideal is support containment.

    A monomial m lies in sqrt(I) iff some generator's support is inside
    m's, and a polynomial lies in a monomial ideal iff each term does.
    """
    for exp in p.terms:
        term_supp = frozenset(i for i, e in enumerate(exp) if e)
        if not any(s <= term_supp for s in supports):
            return False
    return True


def radical_member_detailed(
    p: RatPoly, ideal: Ideal, caps: dict | None = None,
    fallback_primes: Sequence[int] = (2147483659, 2147483693),
) -> tuple[bool, bool]:
    """(member?, certified?) for p in the radical of the ideal.

    Monomial ideals take a combinatorial fast path.  Otherwise the certified
    path runs Rabinowitsch over Q; if that trips the resource cap, the same
    computation runs modulo large primes, and agreement across the primes is
    reported as uncertified (failure probability is bounded by bad
    reduction, < 2^-40 for two independent primes on these input sizes).
    """
    if not p:
        return True, True
    if ideal.is_zero():
        return False, True
    if ideal.has_unit():
        return True, True
    supports = [_monomial_support(g) for g in ideal.gens]
    if all(s is not None for s in supports):
        return _radical_member_monomial(p, supports), True
    try:
        return _rabinowitsch_is_member(p, ideal, None, caps), True
    except GroebnerCap:
        pass
    verdicts = []
    for q in fallback_primes:
        try:
            verdicts.append(_rabinowitsch_is_member(p, ideal, q, caps))
        except GroebnerCap:
            continue
    if not verdicts or len(set(verdicts)) != 1:
        raise GroebnerCap("radical membership undecided within resource caps")
    return verdicts[0], False


def radical_member(p: RatPoly, ideal: Ideal, caps: dict | None = None) -> bool:
    """True iff p vanishes on V(ideal)."""
    return radical_member_detailed(p, ideal, caps)[0]


# -- variety comparison --------------------------------------------------------


@dataclass(frozen=True)
class EqualCertified:
    pass


@dataclass(frozen=True)
class EqualRandomized:
    confidence: float


@dataclass(frozen=True)
class Different:
    witness: tuple
    char: int
    on_first: bool  # witness lies on V(A) only (else on V(B) only)


def _containment(A: Ideal, B: Ideal, caps) -> tuple[bool, bool, RatPoly | None]:
    """Does V(A) lie inside V(B)?  Returns (holds, certified, failing gen)."""
    certified = True
    for g in B.gens:
        member, cert = radical_member_detailed(g, A, caps)
        certified = certified and cert
        if not member:
            return False, certified, g
    return True, certified, None


def varieties_equal(A: Ideal, B: Ideal, caps: dict | None = None, seed: int = 0):
    """Compare V(A) and V(B) by mutual radical membership of generators."""
    fwd, cert1, bad1 = _containment(A, B, caps)
    if not fwd:
        w = _separating_point(A, bad1, seed)
        return Different(witness=w[0], char=w[1], on_first=True)
    rev, cert2, bad2 = _containment(B, A, caps)
    if not rev:
        w = _separating_point(B, bad2, seed)
        return Different(witness=w[0], char=w[1], on_first=False)
    if cert1 and cert2:
        return EqualCertified()
    return EqualRandomized(confidence=1 - 2 ** -40)


def _separating_point(on: Ideal, nonzero: RatPoly, seed: int) -> tuple[tuple, int]:
    """A point of V(on) where ``nonzero`` does not vanish.

    Small rational points are scanned first so the witness is exact over Q
    whenever possible; otherwise sampling falls back to a large prime.
    """
    n = on.n
    for radius in (1, 2):
        choices = range(-radius, radius + 1)
        for pt in itertools.product(choices, repeat=n):
            if all(g.evaluate(pt) == 0 for g in on.gens) and nonzero.evaluate(pt) != 0:
                return tuple(pt), 0
    p = 2147483659
    rng = random.Random(f"sep:{seed}")
    for _ in range(20000):
        pt = _sample_variety_point(on, p, rng)
        if pt is not None and nonzero.evaluate_mod(pt, p) != 0:
            return pt, p
    raise RuntimeError("failed to locate a separating point")


def _sample_variety_point(I: Ideal, p: int, rng: random.Random) -> tuple | None:
    """One random F_p point of V(I), exploiting monomial/binomial shapes."""
    n = I.n
    pt = [rng.randrange(p) for _ in range(n)]
    for g in I.gens:
        terms = g.sorted_terms()
        if len(terms) == 1:
            # monomial: kill one participating variable, reusing zeros so the
            # sampled points stay as far from the origin as possible
            exp = terms[0][0]
            vs = [i + 1 for i, e in enumerate(exp) if e]
            if any(pt[v - 1] % p == 0 for v in vs):
                continue
            pt[rng.choice(vs) - 1] = 0
        elif len(terms) == 2:
            # binomial c1 m1 + c2 m2: solve for a variable exclusive to m1
            (e1, c1), (e2, c2) = terms
            solved = _solve_binomial(pt, e1, c1, e2, c2, p, rng)
            if not solved:
                return None
        else:
            return None
    if all(g.evaluate_mod(pt, p) == 0 for g in I.gens):
        return tuple(pt)
    return None


def _solve_binomial(pt, e1, c1, e2, c2, p, rng) -> bool:
    candidates = [
        (i, e1[i], 1) for i in range(len(e1)) if e1[i] == 1 and e2[i] == 0
    ] + [(i, e2[i], 2) for i in range(len(e2)) if e2[i] == 1 and e1[i] == 0]
    if not candidates:
        return False
    i, _, side = rng.choice(candidates)
    num_exp, num_c = (e2, c2) if side == 1 else (e1, c1)
    den_exp, den_c = (e1, c1) if side == 1 else (e2, c2)
    num = int(num_c) % p
    for j, e in enumerate(num_exp):
        num = num * pow(pt[j], e, p) % p
    den = int(den_c) % p
    for j, e in enumerate(den_exp):
        if j != i:
            den = den * pow(pt[j], e, p) % p
    if den % p == 0:
        return False
    pt[i] = -num * pow(den, -1, p) % p
    return True
