"""Generalized series: convolution, Neumann inversion, valuation data."""

import itertools
import random
from fractions import Fraction

import pytest

from valuedfields import (
    GF,
    LEX_EXP,
    Q_EXP,
    QQ,
    Z_EXP,
    DivisionByZero,
    GroupMismatch,
    HahnSeries,
    LaurentSeries,
    PrecisionLoss,
    hahn_arith,
    hahn_invert,
    hahn_valuation_residue_ac,
    parse_hahn,
)


def test_half_exponents_multiply():
    h = HahnSeries.monomial(Fraction(1, 2))
    assert (h * h).terms == ((Fraction(1), Fraction(1)),)


def test_convolution_example():
    a = parse_hahn("1 + t")
    b = parse_hahn("1 - t")
    prod = hahn_arith("mul", a, b)
    assert prod.coefficient(0) == 1
    assert prod.coefficient(1) == 0
    assert prod.coefficient(2) == -1


def test_additive_inverse_cancels():
    f = parse_hahn("2*t^(-1/2) + 3 + t^(5)")
    assert hahn_arith("add", f, -f).is_zero


def test_group_mismatch():
    with pytest.raises(GroupMismatch):
        HahnSeries.monomial(1, 1, Z_EXP, QQ) + HahnSeries.monomial(Fraction(1), 1, Q_EXP, QQ)


def test_convolution_pair_counts_match_bruteforce():
    """Each output coefficient comes from finitely many (alpha, beta) pairs;
    the enumeration must agree with a cross-product filter."""
    rng = random.Random(8)
    for _ in range(60):
        a = _random_hahn(rng, Q_EXP, QQ)
        b = _random_hahn(rng, Q_EXP, QQ)
        prod = a * b
        # brute force: filter the full cross product
        expected = {}
        for (ea, ca), (eb, cb) in itertools.product(a.terms, b.terms):
            e = ea + eb
            if prod.cap is not None and not e < prod.cap:
                continue
            expected[e] = expected.get(e, Fraction(0)) + ca * cb
        expected = {e: c for e, c in expected.items() if c != 0}
        assert dict(prod.terms) == expected


def _random_hahn(rng, group, field, maxterms=3):
    terms = []
    for _ in range(rng.randint(0, maxterms)):
        if group is Q_EXP:
            e = Fraction(rng.randint(-4, 8), rng.choice((1, 2, 3)))
        elif group is Z_EXP:
            e = rng.randint(-4, 8)
        else:
            e = (rng.randint(0, 2), rng.randint(-3, 3))
        if field is QQ:
            c = Fraction(rng.randint(-5, 5))
        else:
            c = rng.randrange(field.p)
        if c:
            terms.append((e, c))
    cap = None
    if rng.random() < 0.4:
        cap = Fraction(10) if group is Q_EXP else (10 if group is Z_EXP else (3, 0))
    return HahnSeries(group, field, terms, cap)


def test_inversion_of_one_minus_t():
    inv = hahn_invert(parse_hahn("1 - t"), Fraction(6))
    assert all(inv.coefficient(n) == 1 for n in range(6))
    check = parse_hahn("1 - t") * inv
    assert check.coefficient(0) == 1
    assert all(check.coefficient(n) == 0 for n in range(1, 5))


def test_inversion_negative_half_exponent():
    g = parse_hahn("t^(-1/2) + 1")
    inv = hahn_invert(g, Fraction(3))
    assert inv.coefficient(Fraction(1, 2)) == 1
    assert inv.coefficient(Fraction(1)) == -1
    assert inv.coefficient(Fraction(3, 2)) == 1


def test_inversion_constant():
    inv = hahn_invert(HahnSeries.monomial(Fraction(0), 7))
    assert inv.terms == ((Fraction(0), Fraction(1, 7)),)
    assert inv.cap is None


def test_inversion_of_zero():
    with pytest.raises(DivisionByZero):
        hahn_invert(HahnSeries.zero(Q_EXP, QQ))
    with pytest.raises(PrecisionLoss):
        hahn_invert(HahnSeries.zero(Q_EXP, QQ, cap=Fraction(4)))


def test_inversion_randomized_product_is_one_below_cap():
    rng = random.Random(99)
    for group in (Z_EXP, Q_EXP, LEX_EXP):
        done = 0
        while done < 100:
            g = _random_hahn(rng, group, QQ)
            if g.is_zero:
                continue
            gamma = g.terms[0][0]
            if group is Z_EXP:
                cap = gamma + rng.randint(1, 6)
            elif group is Q_EXP:
                cap = gamma + Fraction(rng.randint(1, 12), 2)
            else:
                cap = group.add(gamma, (1, rng.randint(0, 3)))
            try:
                inv = hahn_invert(g, group.add(cap, group.neg(gamma)))
            except PrecisionLoss:
                continue  # lex caps can be unreachable; that is the contract
            prod = g * inv
            assert prod.coefficient(group.zero) == 1
            if prod.cap is not None:
                for e, c in prod.terms:
                    assert e == group.zero or c == 0
            done += 1


def test_lex_group_unreachable_cap_is_precision_loss():
    g = HahnSeries.one(LEX_EXP, QQ) - HahnSeries.monomial((0, 1), 1, LEX_EXP, QQ)
    with pytest.raises(PrecisionLoss):
        hahn_invert(g, (1, 0), term_budget=64)


def test_valuation_residue_ac_triple():
    v, res, ac = hahn_valuation_residue_ac(parse_hahn("3*t^(-1/2) + 1"))
    assert v == Fraction(-1, 2) and res == 0 and ac == 3
    v0, res0, ac0 = hahn_valuation_residue_ac(HahnSeries.zero())
    assert v0.is_infinite and ac0 == 0
    v5, res5, ac5 = hahn_valuation_residue_ac(parse_hahn("5 + t"))
    assert v5 == 0 and res5 == 5 and ac5 == 5


def test_valuation_laws():
    rng = random.Random(12)
    for _ in range(200):
        a = _random_hahn(rng, Q_EXP, QQ)
        b = _random_hahn(rng, Q_EXP, QQ)
        if not a.is_zero and not b.is_zero:
            assert (a * b).valuation == a.valuation + b.valuation
        s = a + b
        if not s.is_zero:
            assert s.valuation >= min(a.valuation, b.valuation)


def test_integer_exponent_hahn_agrees_with_laurent():
    """Cross-module oracle: same inputs through both implementations."""
    rng = random.Random(2718)
    for _ in range(150):
        terms = {}
        for _ in range(rng.randint(0, 4)):
            e = rng.randint(-3, 6)
            c = Fraction(rng.randint(-4, 4))
            if c:
                terms[e] = c
        cap = rng.choice([None, 8])
        h1 = HahnSeries(Z_EXP, QQ, terms.items(), cap)
        l1 = LaurentSeries.from_terms(QQ, terms, cap)
        terms2 = {rng.randint(-2, 4): Fraction(rng.randint(-4, 4)) for _ in range(3)}
        terms2 = {e: c for e, c in terms2.items() if c}
        h2 = HahnSeries(Z_EXP, QQ, terms2.items(), None)
        l2 = LaurentSeries.from_terms(QQ, terms2)

        hs, ls = h1 + h2, l1 + l2
        assert _hahn_as_dict(hs) == _laurent_as_dict(ls)
        assert (hs.cap, hs.is_zero) == (ls.cap, ls.is_zero)
        hp, lp = h1 * h2, l1 * l2
        assert _hahn_as_dict(hp) == _laurent_as_dict(lp)
        if not h1.is_zero:
            rel = 6
            hi = hahn_invert(h1, rel)  # product window below t^rel
            li = l1.invert(rel)
            assert _hahn_as_dict(hi) == _laurent_as_dict(li)


def _hahn_as_dict(h):
    return {int(e): c for e, c in h.terms}


def _laurent_as_dict(s):
    return {
        s.offset + i: c
        for i, c in enumerate(s.coefficients)
        if c != 0
    }
