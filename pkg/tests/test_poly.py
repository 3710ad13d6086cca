"""Polynomials, Taylor coefficients, forms, and the text syntax."""

import random

import pytest

from valuedfields import (
    GF,
    QQ,
    ZZ,
    ArityMismatch,
    BecameZero,
    Form,
    MultiPoly,
    ParseError,
    UniPoly,
    form_evaluate,
    parse_form,
    parse_polynomial,
    parse_unipoly,
    poly_eval_and_derivative,
    restrict_last_variable,
    taylor_coefficients,
)


def test_eval_and_derivative_examples():
    P = parse_unipoly("x^2 - 2")
    assert poly_eval_and_derivative(P, 3) == (7, 6)
    C = UniPoly(ZZ, [5])
    assert poly_eval_and_derivative(C, 9) == (5, 0)
    cube = parse_unipoly("x^3")
    assert poly_eval_and_derivative(cube, 2) == (8, 12)


def test_degree_canonicalization():
    assert UniPoly(ZZ, [1, 2, 0, 0]).degree == 1
    assert UniPoly(ZZ, []).degree is None
    assert UniPoly(ZZ, [0, 0]).degree is None


def test_taylor_monomial_coefficients():
    cube = parse_unipoly("x^3")
    parts = taylor_coefficients(cube)
    assert parts[2] == UniPoly(ZZ, [0, 3])  # 3X
    assert parts[0] == cube
    assert parts[1] == cube.derivative()
    assert parts[3] == UniPoly(ZZ, [1])


def test_taylor_expansion_sums_correctly():
    cube = parse_unipoly("x^3")
    parts = taylor_coefficients(cube)
    total = sum(parts[i].evaluate(2) * 1**i for i in range(len(parts)))
    assert total == 27 == cube.evaluate(3)


def test_taylor_constant_poly():
    const = UniPoly(ZZ, [4])
    parts = taylor_coefficients(const)
    assert parts == (const,)


def test_taylor_identity_randomized_over_z_and_fp():
    rng = random.Random(101)
    for _ in range(200):
        if rng.random() < 0.5:
            ring = ZZ
            coeffs = [rng.randint(-9, 9) for _ in range(rng.randint(1, 7))]
            a, b = rng.randint(-9, 9), rng.randint(-9, 9)
            P = UniPoly(ring, coeffs)
            lhs = P.evaluate(a + b)
            rhs = sum(Q.evaluate(a) * b**i for i, Q in enumerate(taylor_coefficients(P)))
            assert lhs == rhs
        else:
            p = rng.choice((2, 3, 5, 7))
            ring = GF(p)
            coeffs = [rng.randrange(p) for _ in range(rng.randint(1, 7))]
            a, b = rng.randrange(p), rng.randrange(p)
            P = UniPoly(ring, coeffs)
            lhs = P.evaluate(a + b) % p
            rhs = sum(Q.evaluate(a) * b**i for i, Q in enumerate(taylor_coefficients(P))) % p
            assert lhs == rhs


def test_taylor_structural_p0_p1():
    rng = random.Random(55)
    for _ in range(50):
        coeffs = [rng.randint(-6, 6) for _ in range(rng.randint(1, 8))]
        P = UniPoly(ZZ, coeffs)
        parts = taylor_coefficients(P)
        assert parts[0] == P
        if P.degree and P.degree >= 1:
            assert parts[1] == P.derivative()


def test_shift_composes():
    P = parse_unipoly("x^2 - 2")
    Q = P.shift(3)
    assert Q.coefficients == (7, 6, 1)
    assert Q.evaluate(0) == P.evaluate(3)


def test_multipoly_evaluate_with_modulus():
    f, _ = parse_polynomial("x^2 + 2*y")
    assert f.evaluate((3, 4)) == 17
    assert f.evaluate((3, 4), 5) == 2


def test_multipoly_arity_check():
    f, _ = parse_polynomial("x + y")
    with pytest.raises(ArityMismatch):
        f.evaluate((1,))


def test_form_requires_homogeneity():
    poly, _ = parse_polynomial("x^2 + y")
    with pytest.raises(ValueError):
        Form.from_poly(poly)
    form = parse_form("x^2 + x*y")
    assert form.degree == 2


def test_form_zero_vector_and_scaling():
    g = parse_form("x^4 + y^4 - x^2*y^2")
    assert g.evaluate((0, 0)) == 0
    rng = random.Random(13)
    for _ in range(100):
        x = [rng.randint(-6, 6) for _ in range(2)]
        c = rng.randint(-4, 4)
        assert form_evaluate(g, [c * v for v in x]) == c**4 * form_evaluate(g, x)


def test_restrict_last_variable():
    f = parse_form("x1^2 + x1*x2")
    g = restrict_last_variable(f)
    assert g.nvars == 1
    assert g.poly.monomials == {(2,): 1}
    with pytest.raises(BecameZero):
        restrict_last_variable(parse_form("x1*x2"))


def test_restrict_terjanian_g_in_z():
    from valuedfields import terjanian_g

    g = restrict_last_variable(terjanian_g())
    expect, _ = parse_polynomial("x^4 + y^4 - x^2*y^2")
    assert g.poly == expect


def test_parser_variable_conventions():
    poly, names = parse_polynomial("x1^4 + x2^4 - x1^2*x2^2")
    assert names == ("x1", "x2")
    assert poly.monomials == {(4, 0): 1, (0, 4): 1, (2, 2): -1}
    poly2, names2 = parse_polynomial("x - y")
    assert names2 == ("x", "y")
    assert poly2.monomials == {(1, 0): 1, (0, 1): -1}
    gap, _ = parse_polynomial("x3^2")  # x3 fixes arity 3
    assert gap.nvars == 3


def test_parser_coefficients_and_errors():
    poly, _ = parse_polynomial("2*x^2 - 3*x + 7")
    assert poly.monomials == {(2,): 2, (1,): -3, (0,): 7}
    with pytest.raises(ParseError):
        parse_polynomial("x^")
    with pytest.raises(ParseError):
        parse_polynomial("x +* y")
    with pytest.raises(ParseError):
        parse_unipoly("x + y")


def test_no_zero_monomials_after_arithmetic():
    a, _ = parse_polynomial("x^2 + y^2")
    b, _ = parse_polynomial("x^2 - y^2")
    diff = a - b
    assert diff.monomials == {(0, 2): 2}
    cancel = a - a
    assert cancel.is_zero and cancel.monomials == {}


def test_partial_derivative_and_section():
    f, _ = parse_polynomial("x^2*y + 3*y^2")
    dfdx = f.partial_derivative(0)
    assert dfdx.monomials == {(1, 1): 2}
    section = f.coordinate_section(0, (0, 2))  # y frozen at 2
    assert section.coefficients == (12, 0, 2)  # 2x^2 + 12
