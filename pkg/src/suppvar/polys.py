"""Sparse multivariate polynomials over Q in the support-variety coordinates.

Polynomials live in Q[a_1..a_n].  Terms are stored as a dict from exponent
tuple (length n) to Fraction; no zero coefficients are kept.  The fixed term
order is degrevlex.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Iterable


def drl_key(exp: tuple[int, ...]) -> tuple:
    """Sort key: degrevlex, larger terms sort later (use reverse=True for lead)."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


class RatPoly:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[tuple[int, ...], Fraction] | None = None):
        self.n = n
        self.terms: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for exp, c in terms.items():
                if c:
                    self.terms[tuple(exp)] = Fraction(c)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "RatPoly":
        return cls(n)

    @classmethod
    def const(cls, n: int, c) -> "RatPoly":
        return cls(n, {(0,) * n: Fraction(c)})

    @classmethod
    def var(cls, n: int, i: int, c=1) -> "RatPoly":
        exp = [0] * n
        exp[i - 1] = 1
        return cls(n, {tuple(exp): Fraction(c)})

    @classmethod
    def monomial(cls, n: int, indices: Iterable[int], c=1) -> "RatPoly":
        exp = [0] * n
        for i in indices:
            exp[i - 1] += 1
        return cls(n, {tuple(exp): Fraction(c)})

    # -- ring operations --------------------------------------------------------

    def __add__(self, other: "RatPoly") -> "RatPoly":
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, Fraction(0)) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return RatPoly(self.n, out)

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        return self + (-other)

    def __neg__(self) -> "RatPoly":
        return RatPoly(self.n, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other) -> "RatPoly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RatPoly.zero(self.n)
            return RatPoly(self.n, {e: c * other for e, c in self.terms.items()})
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return RatPoly(self.n, out)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, RatPoly) and self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    # -- structure ------------------------------------------------------------

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def lead(self) -> tuple[tuple[int, ...], Fraction]:
        exp = max(self.terms, key=drl_key)
        return exp, self.terms[exp]

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: drl_key(kv[0]), reverse=True)

    def normalized(self) -> "RatPoly":
        """Content-free integer form with positive leading coefficient."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator * (den // c.denominator)))
        scale = Fraction(den, num)
        if self.lead()[1] < 0:
            scale = -scale
        return self * scale

    def evaluate(self, point: Iterable) -> Fraction:
        pt = list(point)
        total = Fraction(0)
        for exp, c in self.terms.items():
            v = c
            for x, e in zip(pt, exp):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    def evaluate_mod(self, point: Iterable[int], p: int) -> int:
        pt = list(point)
        total = 0
        for exp, c in self.terms.items():
            if c.denominator % p == 0:
                raise ZeroDivisionError("denominator vanishes mod p")
            v = c.numerator * pow(c.denominator, -1, p) % p
            for x, e in zip(pt, exp):
                if e:
                    v = v * pow(x % p, e, p) % p
            total = (total + v) % p
        return total

    def substitute_zero(self, variables: Iterable[int]) -> "RatPoly":
        """Set a_i = 0 for each i in ``variables``."""
        kill = set(variables)
        out: dict[tuple[int, ...], Fraction] = {}
        for exp, c in self.terms.items():
            if any(exp[i - 1] for i in kill):
                continue
            out[exp] = out.get(exp, Fraction(0)) + c
        return RatPoly(self.n, out)

    def permute_vars(self, perm: dict[int, int]) -> "RatPoly":
        """Rename a_i -> a_perm[i]."""
        out: dict[tuple[int, ...], Fraction] = {}
        for exp, c in self.terms.items():
            new = [0] * self.n
            for i, e in enumerate(exp, start=1):
                new[perm[i] - 1] = e
            out[tuple(new)] = c
        return RatPoly(self.n, out)

    # -- text -------------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                f"a{i}" if e == 1 else f"a{i}^{e}"
                for i, e in enumerate(exp, start=1)
                if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+{body}" if c > 0 else f"-{body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"RatPoly({self})"


class PolyParseError(ValueError):
    pass

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-zA-Z])(\d+)|(\^)|(\*)|(\+)|(-)|(/))")


def parse_poly(text: str, n: int, letter: str = "a") -> RatPoly:
    """Parse e.g. ``a1*a3*a5+a2*a4*a6`` or ``2*a1^2-a2/3`` into a RatPoly."""
    pos = 0
    out = RatPoly.zero(n)
    sign = 1
    first = True
    while pos < len(text):
        term, pos, sign_next = _parse_term(text, pos, n, letter, first)
        out = out + term * sign
        sign = sign_next
        first = False
    if first:
        raise PolyParseError("empty polynomial")
    return out


def _parse_term(text: str, pos: int, n: int, letter: str, first: bool):
    coeff = Fraction(1)
    exp = [0] * n
    seen_factor = False
    sign = 1
    # leading sign
    while True:
        m = _TOKEN.match(text, pos)
        if m and m.group(7):
            sign = -sign
            pos = m.end()
        elif m and m.group(6) and not seen_factor:
            pos = m.end()
        else:
            break
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise PolyParseError(f"bad token at {text[pos:]!r}")
            return _mk(n, coeff * sign, exp), len(text), 1
        if m.group(1):  # integer
            val = int(m.group(1))
            pos = m.end()
            mm = _TOKEN.match(text, pos)
            if mm and mm.group(8):  # fraction
                pos = mm.end()
                mden = _TOKEN.match(text, pos)
                if not (mden and mden.group(1)):
                    raise PolyParseError("expected denominator")
                val = Fraction(val, int(mden.group(1)))
                pos = mden.end()
            coeff *= val
            seen_factor = True
        elif m.group(2):  # variable
            if m.group(2) != letter:
                raise PolyParseError(f"expected variable {letter}, got {m.group(2)}")
            idx = int(m.group(3))
            if not 1 <= idx <= n:
                raise PolyParseError(f"variable index {idx} out of range 1..{n}")
            pos = m.end()
            power = 1
            mm = _TOKEN.match(text, pos)
            if mm and mm.group(4):
                pos = mm.end()
                me = _TOKEN.match(text, pos)
                if not (me and me.group(1)):
                    raise PolyParseError("expected exponent")
                power = int(me.group(1))
                pos = me.end()
            exp[idx - 1] += power
            seen_factor = True
        elif m.group(5):  # '*'
            pos = m.end()
        elif m.group(6):  # '+' terminates the term
            return _mk(n, coeff * sign, exp), m.end(), 1
        elif m.group(7):  # '-' terminates the term
            return _mk(n, coeff * sign, exp), m.end(), -1
        else:
            raise PolyParseError(f"bad token at {text[pos:]!r}")


def _mk(n: int, coeff: Fraction, exp: list[int]) -> RatPoly:
    return RatPoly(n, {tuple(exp): coeff})


class Ideal:
    """A finite list of polynomial generators, normalized and deduplicated."""

    __slots__ = ("n", "gens")

    def __init__(self, n: int, gens: Iterable[RatPoly]):
        self.n = n
        seen: dict = {}
        for g in gens:
            if not g:
                continue
            gn = g.normalized()
            seen[frozenset(gn.terms.items())] = gn
        self.gens: tuple[RatPoly, ...] = tuple(
            sorted(seen.values(), key=lambda p: (drl_key(p.lead()[0]), len(p.terms), str(p)))
        )

    def is_zero(self) -> bool:
        return not self.gens

    def has_unit(self) -> bool:
        return any(g.is_constant() for g in self.gens)

    def __eq__(self, other) -> bool:
        return isinstance(other, Ideal) and self.n == other.n and self.gens == other.gens

    def __hash__(self) -> int:
        return hash((self.n, self.gens))

    def __iter__(self):
        return iter(self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def __repr__(self) -> str:
        return f"Ideal{self}"
