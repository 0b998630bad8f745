from fractions import Fraction

import pytest

from suppvar.polys import Ideal, PolyParseError, RatPoly, drl_key, parse_poly


def test_basic_arithmetic():
    a1 = RatPoly.var(3, 1)
    a2 = RatPoly.var(3, 2)
    p = (a1 + a2) * (a1 - a2)
    assert p == a1 * a1 - a2 * a2
    assert not (p - p)
    assert (p * 0) == RatPoly.zero(3)
    assert RatPoly.const(3, Fraction(1, 2)) * 2 == RatPoly.const(3, 1)


def test_degrevlex_order():
    # x*y^2 > x^2 in degree; among degree 3: a1^2*a2 vs a1*a2^2 -> drl compares
    # the last exponent: smaller trailing exponent is larger.
    t1 = (2, 1, 0)
    t2 = (1, 2, 0)
    assert drl_key(t1) > drl_key(t2)
    assert drl_key((1, 0, 1)) < drl_key((1, 1, 0))
    p = parse_poly("a1*a2^2+a1^2*a2", 3)
    assert p.lead()[0] == (2, 1, 0)


def test_print_sorted_and_stable():
    p = parse_poly("a2*a4*a6+a1*a3*a5", 6)
    assert str(p) == "a1*a3*a5+a2*a4*a6"
    q = parse_poly("2*a1^2-a2+3", 2)
    assert str(q) == "2*a1^2-a2+3"
    assert str(parse_poly("a2-a1", 2)) == "-a1+a2"  # degrevlex: a1 > a2


def test_parse_round_trip():
    for text in ("a1*a3*a5+a2*a4*a6", "2*a1^2-a2+3", "a1", "-a1+a2", "5", "a1^4-a1"):
        p = parse_poly(text, 6)
        assert parse_poly(str(p), 6) == p


def test_parse_fractions_and_errors():
    assert parse_poly("1/2*a1", 2) == RatPoly.var(2, 1, Fraction(1, 2))
    with pytest.raises(PolyParseError):
        parse_poly("b1", 2)
    with pytest.raises(PolyParseError):
        parse_poly("a9", 2)
    with pytest.raises(PolyParseError):
        parse_poly("", 2)
    with pytest.raises(PolyParseError):
        parse_poly("a1^", 2)


def test_evaluate():
    p = parse_poly("a1*a3*a5+a2*a4*a6", 6)
    assert p.evaluate((1, 1, 1, 1, 1, 1)) == 2
    assert p.evaluate((1, 1, 1, 1, 1, -1)) == 0
    assert p.evaluate_mod((1, 1, 1, 1, 1, 1), 2) == 0
    assert p.evaluate_mod((3, 5, 7, 11, 13, 17), 97) == (3 * 7 * 13 + 5 * 11 * 17) % 97


def test_substitute_zero_and_permute():
    p = parse_poly("a1*a2+a3", 3)
    assert p.substitute_zero([1]) == RatPoly.var(3, 3)
    assert p.substitute_zero([3]) == parse_poly("a1*a2", 3)
    q = p.permute_vars({1: 2, 2: 3, 3: 1})
    assert q == parse_poly("a2*a3+a1", 3)


def test_normalized_content_free():
    p = parse_poly("2/3*a1+4/3*a2", 2)
    n = p.normalized()
    assert n == parse_poly("a1+2*a2", 2)
    assert (-(RatPoly.var(2, 1))).normalized() == RatPoly.var(2, 1)


def test_ideal_normalization():
    n = 3
    gens = [
        parse_poly("2*a1", n),
        parse_poly("a1", n),
        RatPoly.zero(n),
        parse_poly("a2-a1", n),
    ]
    I = Ideal(n, gens)
    assert len(I.gens) == 2
    assert not I.has_unit()
    assert Ideal(n, [parse_poly("7", n)]).has_unit()
    assert Ideal(n, []).is_zero()
