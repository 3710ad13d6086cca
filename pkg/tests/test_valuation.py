"""Unit tests for p-adic and Laurent series arithmetic."""

import random
from fractions import Fraction

import pytest

from valuedfields import (
    GF,
    INFINITY,
    QQ,
    DivisionByZero,
    LaurentSeries,
    NotPrime,
    PadicNumber,
    PrecisionLoss,
    PrimeMismatch,
    ValuationValue,
    angular_component,
    padic_arith,
    padic_from_rational,
    parse_laurent,
    parse_padic,
    residue,
    series_arith,
    valuation,
)

PRIMES = (2, 3, 5, 7)


def random_rational(rng, p):
    num = rng.randint(-400, 400)
    den = rng.randint(1, 60)
    scale = rng.randint(-3, 3)
    return Fraction(num, den) * Fraction(p) ** scale


def random_padic(rng, p, prec=16):
    while True:
        q = random_rational(rng, p)
        if q != 0:
            return PadicNumber.from_rational(q.numerator, q.denominator, p, prec)


# --- ValuationValue -------------------------------------------------------


def test_valuation_value_order_and_addition():
    two = ValuationValue(2)
    five = ValuationValue(5)
    assert two < five < INFINITY
    assert two + five == ValuationValue(7)
    assert (two + INFINITY).is_infinite
    assert INFINITY + INFINITY == INFINITY
    assert min(five, two) == two
    with pytest.raises(ValueError):
        -INFINITY


def test_valuation_value_payload_kinds():
    assert ValuationValue(Fraction(1, 2)) < ValuationValue(Fraction(3, 4))
    assert ValuationValue((0, 3)) < ValuationValue((1, 0))  # lexicographic
    assert ValuationValue((1, 2)) + ValuationValue((3, 4)) == ValuationValue((4, 6))


# --- construction ---------------------------------------------------------


def test_minus_one_has_all_p_minus_one_digits():
    x = padic_from_rational(-1, 1, 5, 4)
    assert x.valuation == 0
    assert x.unit_digits == (4, 4, 4, 4)


def test_zero_is_infinite_valuation():
    z = padic_from_rational(0, 1, 7, 4)
    assert z.is_zero
    assert z.valuation.is_infinite
    assert z.unit_digits == ()


def test_75_in_q5():
    x = padic_from_rational(75, 1, 5, 3)
    assert x.valuation == 2
    assert x.unit_digits == (3, 0, 0)


def test_not_prime_rejected():
    with pytest.raises(NotPrime):
        padic_from_rational(1, 1, 6, 4)


def test_division_by_zero_denominator():
    with pytest.raises(DivisionByZero):
        padic_from_rational(1, 0, 5, 4)


def test_from_rational_times_denominator_congruence():
    rng = random.Random(11)
    for _ in range(200):
        p = rng.choice(PRIMES)
        num = rng.randint(-300, 300)
        den = rng.randint(1, 50)
        x = padic_from_rational(num, den, p, 12)
        if x.is_zero:
            assert num == 0
            continue
        v = x.valuation.finite
        if v >= 0:
            k = v + 12
            assert (x.integer_representative(k) * den - num) % p**k == 0


# --- arithmetic against the rational oracle --------------------------------


def test_mul_matches_integer_expansion():
    x = PadicNumber.from_int(17, 7, 3) * PadicNumber.from_int(12, 7, 3)
    assert x.unit_digits == (1, 1, 4)  # 204 in base 7


def test_invert_of_minus_four_is_all_ones():
    x = PadicNumber.from_int(-4, 5, 8).invert()
    assert x.unit_digits == (1,) * 8  # 1/(1-5) = sum 5^i


def test_add_identity_and_double_negation():
    rng = random.Random(5)
    for _ in range(50):
        p = rng.choice(PRIMES)
        x = random_padic(rng, p)
        zero = PadicNumber.zero(p)
        assert x + zero == x
        assert -(-x) == x


def test_arith_agrees_with_rationals_mod_pk():
    rng = random.Random(23)
    for _ in range(300):
        p = rng.choice(PRIMES)
        qa, qb = random_rational(rng, p), random_rational(rng, p)
        a = PadicNumber.from_rational(qa.numerator, qa.denominator, p, 14)
        b = PadicNumber.from_rational(qb.numerator, qb.denominator, p, 14)
        for op, exact in (("add", qa + qb), ("mul", qa * qb)):
            got = padic_arith(op, a, b)
            if exact == 0:
                assert got.is_zero
                continue
            assert got.exact_rational == exact
            # digits really are the base-p window of the exact value
            shift = exact / Fraction(p) ** got.valuation.finite
            k = got.known_precision
            rep = shift.numerator * pow(shift.denominator, -1, p**k) % p**k
            assert got.unit_int() == rep


def test_valuation_laws_product_and_sum():
    rng = random.Random(31)
    for _ in range(400):
        p = rng.choice(PRIMES)
        a, b = random_padic(rng, p), random_padic(rng, p)
        assert (a * b).valuation == a.valuation + b.valuation
        try:
            s = a + b
        except PrecisionLoss:
            continue
        if not s.is_zero:
            assert s.valuation >= min(a.valuation, b.valuation)
        if a.valuation != b.valuation:
            assert s.valuation == min(a.valuation, b.valuation)


def test_v_of_one_and_minus_one_and_negation():
    for p in PRIMES:
        one = PadicNumber.from_int(1, p)
        minus = PadicNumber.from_int(-1, p)
        assert one.valuation == 0 and minus.valuation == 0
        x = PadicNumber.from_rational(3, 4, p, 10) if p != 2 else PadicNumber.from_int(12, 2, 10)
        assert x.valuation == (-x).valuation


def test_prime_mismatch():
    with pytest.raises(PrimeMismatch):
        PadicNumber.from_int(1, 3) + PadicNumber.from_int(1, 5)


def test_invert_zero():
    with pytest.raises(DivisionByZero):
        PadicNumber.zero(5).invert()


# --- windowed precision semantics ------------------------------------------


def test_windowed_equal_valuation_cancellation_drops_precision():
    a = PadicNumber.from_int(1 + 5 + 25, 5, 6).truncated()
    b = PadicNumber.from_int(-(1 + 5), 5, 6).truncated()
    s = a + b  # 25: two leading digits cancel
    assert s.valuation == 2
    assert s.known_precision == 4
    assert s.unit_digits[0] == 1


def test_windowed_full_cancellation_raises():
    a = PadicNumber.from_int(7, 5, 4).truncated()
    with pytest.raises(PrecisionLoss):
        a + (-a)


def test_exact_full_cancellation_is_exact_zero():
    a = PadicNumber.from_int(7, 5, 4)
    assert (a + (-a)).is_zero


def test_mixed_exact_windowed_keeps_window():
    w = PadicNumber.from_int(7, 5, 4).truncated()  # trusted mod 5^4
    s = 625 + w  # exact side must not shrink the absolute window
    assert s.integer_representative(4) == (625 + 7) % 5**4


def test_canonical_form_stability():
    rng = random.Random(47)
    for _ in range(300):
        p = rng.choice(PRIMES)
        a, b = random_padic(rng, p, 10), random_padic(rng, p, 10)
        try:
            out = rng.choice(
                [a + b, a * b, -a, a.invert(), a.truncated() * b, a - b]
            )
        except PrecisionLoss:
            continue
        if out.is_zero:
            assert out.unit_digits == ()
        else:
            assert out.unit_digits[0] != 0
            assert all(0 <= d < p for d in out.unit_digits)
            assert out.known_precision == len(out.unit_digits)


# --- residue and angular component ------------------------------------------


def test_residue_examples():
    assert residue(PadicNumber.from_int(10, 7)) == 3
    assert residue(padic_from_rational(75, 1, 5, 4)) == 0  # v > 0
    assert residue(padic_from_rational(1, 5, 5, 4)) == 0  # v < 0
    assert residue(PadicNumber.zero(5)) == 0


def test_angular_component_examples():
    x = padic_from_rational(75, 1, 5, 4)
    assert angular_component(x) == 3
    assert angular_component(PadicNumber.zero(5)) == 0
    y = padic_from_rational(1, 5, 5, 4)
    fifteen = x * y
    assert angular_component(fifteen) == 3
    assert angular_component(fifteen) == angular_component(x) * angular_component(y) % 5


def test_ac_is_multiplicative_and_matches_residue_on_units():
    rng = random.Random(61)
    for _ in range(300):
        p = rng.choice(PRIMES)
        a, b = random_padic(rng, p), random_padic(rng, p)
        assert angular_component(a * b) == angular_component(a) * angular_component(b) % p
        if a.valuation == 0:
            assert angular_component(a) == residue(a)


# --- text round-trips --------------------------------------------------------


def test_padic_rendering_round_trip():
    rng = random.Random(3)
    for _ in range(40):
        p = rng.choice(PRIMES)
        x = random_padic(rng, p, 6)
        back = parse_padic(str(x))
        assert back.prime == x.prime
        assert back.valuation == x.valuation
        assert back.unit_digits == x.unit_digits
    assert parse_padic("0", 5).is_zero


# --- Laurent series ----------------------------------------------------------


def test_series_invert_geometric():
    s = parse_laurent("1 - t", QQ)
    inv = series_arith("invert", s)
    assert all(c == 1 for c in inv.coefficients)
    assert (s * inv).coefficient(0) == 1
    for i in range(1, inv.cap - 1):
        assert (s * inv).coefficient(i) == 0


def test_series_t_inverse():
    t = LaurentSeries.generator(QQ)
    assert (t.invert() * t) == LaurentSeries.one(QQ)


def test_series_full_cancellation_mod5_returns_zero():
    f5 = GF(5)
    a = LaurentSeries(f5, 0, [2, 2, 2, 2], 4)
    b = LaurentSeries(f5, 0, [3, 3, 3, 3], 4)
    s = series_arith("add", a, b)
    assert s.is_zero
    assert s.cap == 4
    assert valuation(s).is_infinite


def test_series_invert_zero_below_cap_is_precision_loss():
    with pytest.raises(PrecisionLoss):
        LaurentSeries.zero(QQ, cap=5).invert()
    with pytest.raises(DivisionByZero):
        LaurentSeries.zero(QQ).invert()


def test_series_valuation_laws():
    rng = random.Random(77)
    f5 = GF(5)
    for field in (QQ, f5):
        for _ in range(150):
            a = _random_series(rng, field)
            b = _random_series(rng, field)
            prod = a * b
            if not (a.is_zero or b.is_zero):
                assert prod.valuation == a.valuation + b.valuation
            s = a + b
            if not s.is_zero:
                assert s.valuation >= min(a.valuation, b.valuation)
            if not a.is_zero and not b.is_zero and a.valuation != b.valuation:
                assert s.valuation == min(a.valuation, b.valuation)


def _random_series(rng, field, maxterms=4):
    terms = {}
    for _ in range(rng.randint(0, maxterms)):
        e = rng.randint(-3, 5)
        c = rng.randint(1, 6) if field != QQ else Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        if field != QQ:
            c = c % 5
        if c:
            terms[e] = c
    cap = rng.choice([None, 8, 10])
    return LaurentSeries.from_terms(field, terms, cap)


def test_series_mul_t_inverse_times_t():
    t = LaurentSeries.generator(QQ)
    tinv = LaurentSeries.from_terms(QQ, {-1: 1})
    assert (tinv * t) == LaurentSeries.one(QQ)


def test_series_residue_and_ac():
    s = parse_laurent("3*t^(-3) + 1", GF(5))
    assert valuation(s) == -3
    assert residue(s) == 0
    assert angular_component(s) == 3
    u = parse_laurent("5 + t", QQ)
    assert residue(u) == 5 and angular_component(u) == 5


def test_series_coefficient_beyond_cap_raises():
    s = parse_laurent("1 + O(t^3)", QQ)
    with pytest.raises(PrecisionLoss):
        s.coefficient(3)


def test_series_text_round_trip():
    rng = random.Random(9)
    for _ in range(40):
        s = _random_series(rng, QQ)
        assert parse_laurent(str(s), QQ) == s
