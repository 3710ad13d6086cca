"""Hensel lifting, n-th roots, power classification, and definability."""

import random
from fractions import Fraction

import pytest

from valuedfields import (
    GF,
    QQ,
    ZZ,
    HypothesisFailed,
    LaurentSeries,
    NotAnNthPower,
    NotASimpleRoot,
    PadicNumber,
    ResidueObstruction,
    UniPoly,
    ValuationNotDivisible,
    is_nth_power,
    is_square,
    nth_root_one_plus,
    nth_root_with_valuation,
    parse_unipoly,
    simple_zero_lift,
    strong_zero_lift,
    zp_membership_via_definability,
)
from valuedfields.valuation import vp_int

PRIMES = (3, 5, 7)


def poly_int(coeffs):
    return UniPoly(ZZ, coeffs)


# --- simple zero lift -------------------------------------------------------


def test_sqrt2_in_z7_pinned_values():
    P = parse_unipoly("x^2 - 2")
    assert simple_zero_lift(P, 7, 3, 2).root.integer_representative(2) == 10
    assert simple_zero_lift(P, 7, 3, 3).root.integer_representative(3) == 108
    assert 10**2 % 49 == 2
    assert 108**2 % 343 == 2


def test_linear_lift_is_exact_constant():
    c = 23
    P = poly_int([-c, 1])
    out = simple_zero_lift(P, 5, c % 5, 6)
    assert out.root.integer_representative(6) == c % 5**6
    assert out.residue_seed == c % 5


def test_simple_lift_rejects_bad_seed():
    P = parse_unipoly("x^2 - 2")
    with pytest.raises(NotASimpleRoot):
        simple_zero_lift(P, 7, 1, 3)
    with pytest.raises(NotASimpleRoot):
        simple_zero_lift(parse_unipoly("x^2"), 5, 0, 3)  # double root


def test_simple_lift_randomized_postconditions():
    rng = random.Random(17)
    done = 0
    while done < 100:
        p = rng.choice(PRIMES)
        coeffs = [rng.randint(-20, 20) for _ in range(rng.randint(2, 6))]
        P = poly_int(coeffs)
        dP = P.derivative()
        seed = next(
            (s for s in range(p) if P.evaluate(s) % p == 0 and dP.evaluate(s) % p != 0),
            None,
        )
        if seed is None:
            continue
        prec = rng.randint(2, 12)
        out = simple_zero_lift(P, p, seed, prec)
        root = out.root
        rep = 0 if root.is_zero else root.integer_representative(prec)
        assert P.evaluate(rep) % p**prec == 0
        assert rep % p == seed
        assert out.residue_seed == seed
        done += 1


# --- strong zero lift --------------------------------------------------------


def test_strong_lift_pinned_example():
    out = strong_zero_lift(parse_unipoly("x^2 + x + 7"), 7, 2)
    assert out.root.integer_representative(2) == 42  # -7 mod 49
    assert out.root.valuation == 1


def test_strong_lift_linear():
    out = strong_zero_lift(parse_unipoly("x - 7"), 7, 5)
    assert out.root.valuation == 1
    assert out.root.integer_representative(5) == 7


def test_strong_lift_hypothesis_failure():
    with pytest.raises(HypothesisFailed):
        strong_zero_lift(parse_unipoly("x^2 + x + 1"), 7, 4)  # v(P(0)) = 0
    with pytest.raises(HypothesisFailed):
        strong_zero_lift(parse_unipoly("x^2 + 7"), 7, 4)  # P'(0) = 0


def test_strong_lift_exact_zero_constant_term():
    out = strong_zero_lift(parse_unipoly("x^2 + x"), 7, 4)
    assert out.root.is_zero


def test_strong_lift_valuation_contract_randomized():
    rng = random.Random(29)
    done = 0
    while done < 100:
        p = rng.choice(PRIMES)
        e1 = rng.randint(0, 2)
        e0 = rng.randint(2 * e1 + 1, 2 * e1 + 3)
        a0 = p**e0 * rng.choice([u for u in range(1, 12) if u % p])
        a1 = p**e1 * rng.choice([u for u in range(1, 12) if u % p])
        tail = [rng.randint(-10, 10) for _ in range(rng.randint(1, 4))]
        P = poly_int([a0, a1] + tail)
        if P.degree < 1:
            continue
        prec = rng.randint(max(2, e0 - e1 + 1), 14)
        out = strong_zero_lift(P, p, prec)
        root = out.root
        assert not root.is_zero
        assert root.valuation == e0 - e1
        rep = root.integer_representative(prec)
        assert P.evaluate(rep) % p**prec == 0
        done += 1


def test_two_formulations_agree_on_overlap():
    """A simple residue seed turns into the strong hypothesis after shifting,
    and both lifts land on the same root mod p^prec."""
    rng = random.Random(43)
    done = 0
    while done < 60:
        p = rng.choice(PRIMES)
        coeffs = [rng.randint(-15, 15) for _ in range(rng.randint(2, 5))]
        P = poly_int(coeffs)
        dP = P.derivative()
        seed = next(
            (s for s in range(p) if P.evaluate(s) % p == 0 and dP.evaluate(s) % p != 0),
            None,
        )
        if seed is None or P.evaluate(seed) == 0:
            continue
        prec = rng.randint(2, 10)
        shifted = P.shift(seed)
        assert vp_int(shifted.evaluate(0), p) > 2 * vp_int(shifted.derivative().evaluate(0), p)
        via_strong = strong_zero_lift(shifted, p, prec).root
        direct = simple_zero_lift(P, p, seed, prec).root
        lhs = (seed + via_strong.integer_representative(prec)) % p**prec
        assert lhs == direct.integer_representative(prec)
        done += 1


# --- n-th roots ---------------------------------------------------------------


def test_nth_root_one_plus_pinned():
    a = nth_root_one_plus(PadicNumber.from_int(7, 7, 8), 3, 2)
    assert a.integer_representative(2) == 36
    assert pow(36, 3, 49) == 8
    assert (a - 1).valuation == 1


def test_nth_root_one_plus_zero_gives_one():
    a = nth_root_one_plus(PadicNumber.zero(7), 4, 6)
    assert a.integer_representative(1) == 1


def test_nth_root_one_plus_squares_mod_5():
    a = nth_root_one_plus(PadicNumber.from_int(5, 5, 10), 2, 6)
    assert pow(a.integer_representative(6), 2, 5**6) == 6
    assert a.integer_representative(1) == 1


def test_nth_root_one_plus_residue_obstruction():
    with pytest.raises(ResidueObstruction):
        nth_root_one_plus(PadicNumber.from_int(5, 5, 8), 5, 4)


def test_nth_root_one_plus_valuation_contract_randomized():
    rng = random.Random(3)
    for _ in range(60):
        p = rng.choice(PRIMES)
        vb = rng.randint(1, 3)
        unit = rng.choice([u for u in range(1, 10) if u % p])
        b = PadicNumber.from_int(p**vb * unit, p, 12)
        n = rng.choice([n for n in (2, 3, 4, 5) if n % p])
        prec = rng.randint(vb + 1, 10)
        a = nth_root_one_plus(b, n, prec)
        assert (a - 1).valuation == vb
        assert pow(a.integer_representative(prec), n, p**prec) == (
            1 + b.integer_representative(prec)
        ) % p**prec


def test_nth_root_with_valuation_exact_square():
    x = PadicNumber.from_int(9 * 49, 7, 10)
    root = nth_root_with_valuation(x, 2, 10)
    assert root.integer_representative(10) == 21


def test_nth_root_with_valuation_series():
    root = nth_root_with_valuation(LaurentSeries(GF(5), 2, [4]), 2, 8)
    assert root.offset == 1
    assert root.coefficient(1) in (2, 3)
    square = root * root
    assert square.coefficient(2) == 4


def test_nth_root_not_a_power_and_divisibility():
    with pytest.raises(NotAnNthPower):
        nth_root_with_valuation(PadicNumber.from_int(3, 7, 8), 2, 8)
    with pytest.raises(ValuationNotDivisible):
        nth_root_with_valuation(PadicNumber.from_int(7, 7, 8), 2, 8)
    with pytest.raises(ResidueObstruction):
        nth_root_with_valuation(PadicNumber.from_int(9, 3, 8), 3, 8)


def test_nth_root_verifies_by_powering_randomized():
    rng = random.Random(71)
    done = 0
    while done < 60:
        p = rng.choice(PRIMES)
        n = rng.choice([n for n in (2, 3) if n % p])
        w = rng.randint(1, p - 1)
        v = n * rng.randint(-2, 2)
        base = Fraction(p) ** v * (pow(w, n, p) + p * rng.randint(0, 6))
        if base == 0:
            continue
        x = PadicNumber.from_rational(base.numerator, base.denominator, p, 12)
        try:
            root = nth_root_with_valuation(x, n, 8)
        except NotAnNthPower:
            continue
        assert root.valuation == x.valuation.finite // n
        power = root**n
        diff_window = min(8, x.known_precision)
        shift = -min(0, v)
        lhs = (power * p**shift).integer_representative(diff_window)
        rhs = (x * p**shift).integer_representative(diff_window)
        assert lhs == rhs
        done += 1


def test_series_nth_root_over_q():
    from valuedfields import parse_laurent

    s = parse_laurent("4 + 4*t", QQ)
    root = nth_root_with_valuation(s, 2, 8)
    square = root * root
    assert square.coefficient(0) == 4 and square.coefficient(1) == 4
    with pytest.raises(NotAnNthPower):
        nth_root_with_valuation(parse_laurent("3 + t", QQ), 2, 8)


# --- power classification ------------------------------------------------------


def test_square_classification_odd_p_matches_exhaustive():
    for p in (3, 5, 7):
        squares = {pow(x, 2, p**4) for x in range(p**4)}
        for u in range(1, p**4):
            if u % p == 0:
                continue
            claimed = is_square(PadicNumber.from_int(u, p, 10))
            # unit squares mod p^4 decide squareness in Z_p for odd p
            assert claimed == (u in squares)


def test_square_classification_p2_matches_exhaustive_squaring():
    for k in range(3, 11):
        squares = {pow(x, 2, 2**k) for x in range(2**k)}
        for u in range(1, 2**k, 2):
            claimed = is_square(PadicNumber.from_int(u, 2, 12))
            assert claimed == (u in squares), (k, u)


def test_cube_classification_p2_matches_exhaustive_cubing():
    for k in range(3, 9):
        cubes = {pow(x, 3, 2**k) for x in range(2**k)}
        for u in range(1, 2**k, 2):
            claimed = is_nth_power(PadicNumber.from_int(u, 2, 12), 3)
            assert claimed == (u in cubes), (k, u)


def test_square_needs_even_valuation():
    assert not is_square(PadicNumber.from_int(5, 5, 10))
    assert is_square(PadicNumber.from_int(25, 5, 10))
    assert is_square(PadicNumber.zero(5))


# --- definability of Z_p -------------------------------------------------------


def test_definability_examples():
    assert zp_membership_via_definability(PadicNumber.from_rational(1, 5, 5, 12)) == (False, False)
    assert zp_membership_via_definability(PadicNumber.from_int(2, 5, 12)) == (True, True)
    assert zp_membership_via_definability(PadicNumber.from_int(1, 2, 12)) == (True, True)


def test_definability_matches_truth_spot_checks():
    rng = random.Random(83)
    for _ in range(200):
        p = rng.choice((2, 3, 5, 7))
        m = rng.randint(-60, 60)
        k = rng.randint(0, 2)
        if m == 0 and k:
            continue
        a = PadicNumber.from_rational(m, p**k, p, 14)
        claimed, truth = zp_membership_via_definability(a)
        assert claimed == truth
