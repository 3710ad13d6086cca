"""Hensel lifting over Z_p, n-th roots, and the definability of Z_p in Q_p.

Two formulations of the lemma are implemented side by side:

* simple_zero_lift -- a residue root with invertible derivative lifts to
  an exact root congruent to the seed;
* strong_zero_lift -- v(P(0)) > 2*v(P'(0)) forces a root of valuation
  exactly v(P(0)) - v(P'(0)).

Both are driven by Newton iteration with doubling working precision on
exact integer representatives, so every claimed congruence is checked by
big-integer arithmetic before a result is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DivisionByZero,
    HypothesisFailed,
    NotASimpleRoot,
    NotAnNthPower,
    PrecisionLoss,
    ResidueObstruction,
    ValuationNotDivisible,
)
from .fields import IntegerRing, PrimeField, RationalField, check_prime
from .poly import UniPoly
from .valuation import DEFAULT_PRECISION, LaurentSeries, PadicNumber, vp_int

_MAX_NEWTON_STEPS = 256


@dataclass(frozen=True)
class LiftResult:
    root: PadicNumber
    achieved_precision: int
    residue_seed: int


def _integer_coefficients(P: UniPoly, p: int) -> list[int]:
    """Coefficients as p-adic integers (rationals allowed when p-integral)."""
    out = []
    for c in P.coefficients:
        if isinstance(c, Fraction):
            if c.denominator % p == 0:
                raise HypothesisFailed(f"coefficient {c} is not a {p}-adic integer")
            out.append(c)
        else:
            out.append(int(c))
    return out


def _eval_mod(coeffs, x: int, modulus: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        if isinstance(c, Fraction):
            c = c.numerator * pow(c.denominator, -1, modulus) % modulus
        acc = (acc * x + c) % modulus
    return acc


def _eval_exact(coeffs, x: int):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deriv(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:]


def _vp_value(value, p: int):
    """Valuation of an exact int/Fraction, None for zero."""
    if value == 0:
        return None
    if isinstance(value, Fraction):
        return vp_int(value.numerator, p) - vp_int(value.denominator, p)
    return vp_int(value, p)


def simple_zero_lift(P: UniPoly, p: int, seed: int, prec: int) -> LiftResult:
    """Lift a simple residue root of P to a root mod p^prec.

    Requires P(seed) = 0 and P'(seed) != 0 in F_p; the lifted root is the
    unique one congruent to the seed.
    """
    check_prime(p)
    if prec < 1:
        raise ValueError("precision must be positive")
    seed %= p
    coeffs = _integer_coefficients(P, p)
    dcoeffs = _deriv(coeffs)
    if _eval_mod(coeffs, seed, p) != 0 or _eval_mod(dcoeffs, seed, p) == 0:
        raise NotASimpleRoot(
            f"seed {seed} mod {p}: need P(seed) = 0 and P'(seed) != 0 in the residue field"
        )
    x, k = seed, 1
    while k < prec:
        k = min(2 * k, prec)
        modulus = p**k
        fx = _eval_mod(coeffs, x, modulus)
        dfx = _eval_mod(dcoeffs, x, modulus)
        x = (x - fx * pow(dfx, -1, modulus)) % modulus
    modulus = p**prec
    assert _eval_mod(coeffs, x, modulus) == 0
    if x == 0:
        root = PadicNumber.zero(p)
    else:
        root = PadicNumber.from_integer_window(x, p, prec)
    return LiftResult(root, prec, seed)


def strong_zero_lift(P: UniPoly, p: int, prec: int) -> LiftResult:
    """Root of valuation exactly v(P(0)) - v(P'(0)) under v(P(0)) > 2 v(P'(0)).

    Produces a with P(a) = 0 mod p^prec; raises HypothesisFailed when the
    valuation inequality does not hold.
    """
    check_prime(p)
    if prec < 1:
        raise ValueError("precision must be positive")
    coeffs = _integer_coefficients(P, p)
    dcoeffs = _deriv(coeffs)
    a0 = _eval_exact(coeffs, 0)
    a1 = _eval_exact(dcoeffs, 0) if dcoeffs else 0
    if a0 == 0:
        return LiftResult(PadicNumber.zero(p), prec, 0)
    e0 = _vp_value(a0, p)
    e1 = _vp_value(a1, p)
    if e1 is None or e0 <= 2 * e1 or e0 < 0 or e1 < 0:
        raise HypothesisFailed(
            f"need v(P(0)) > 2*v(P'(0)) with both finite and >= 0, got {e0} vs {e1}"
        )
    m = e0 - e1  # valuation of the root, exactly
    # window wide enough to see the root's leading digit and the target
    window = max(prec, m + 1)
    work = window + 2 * e1 + 2
    modulus = p**work
    x = 0
    for _ in range(_MAX_NEWTON_STEPS):
        fx = _eval_mod(coeffs, x, modulus)
        if fx % p ** (window + e1) == 0:
            break
        dfx = _eval_mod(dcoeffs, x, modulus)
        e = vp_int(dfx, p)
        unit = dfx // p**e
        step = (fx // p**e) * pow(unit, -1, modulus) % modulus
        x = (x - step) % modulus
    else:
        raise PrecisionLoss("Newton iteration failed to converge")
    assert _eval_mod(coeffs, x, p**prec) == 0
    assert vp_int(x % p**window, p) == m
    root = PadicNumber.from_integer_window(x % p**window, p, window)
    return LiftResult(root, prec, 0)


def nth_root_one_plus(b: PadicNumber, n: int, prec: int = DEFAULT_PRECISION) -> PadicNumber:
    """Solve a^n = 1 + b with v(a - 1) = v(b), for v(b) >= 1 and p coprime to n."""
    p = b.prime
    if n < 1:
        raise ValueError("n must be positive")
    if b.is_zero:
        return PadicNumber.from_int(1, p, prec)
    if b.valuation < 1:
        raise HypothesisFailed("need v(b) >= 1")
    if math.gcd(n, p) != 1:
        raise ResidueObstruction(f"gcd({n}, {p}) != 1: outside the equicharacteristic-0 scope")
    u = (1 + b).integer_representative(prec)
    # (C + 1)^n - u has value 1 - u at 0 (valuation = v(b) > 0) and derivative n (a unit)
    shifted = [math.comb(n, i) for i in range(n + 1)]
    shifted[0] -= u
    result = strong_zero_lift(UniPoly(IntegerRing(), shifted), p, prec)
    c = result.root
    assert c.valuation == b.valuation
    a = (1 + c).with_precision(prec)
    assert (a**n).integer_representative(prec) == u % p**prec
    return a


def nth_root_with_valuation(x, n: int, prec: int = DEFAULT_PRECISION):
    """n-th root of x with v(root) = v(x)/n, following the unit-part reduction.

    Dispatches on the value kind: PadicNumber (needs p coprime to n) or
    LaurentSeries (needs the coefficient characteristic coprime to n).
    """
    if isinstance(x, PadicNumber):
        return _padic_nth_root(x, n, prec)
    if isinstance(x, LaurentSeries):
        return _series_nth_root(x, n, prec)
    raise TypeError(f"no n-th root procedure for {type(x).__name__}")


def _padic_nth_root(x: PadicNumber, n: int, prec: int) -> PadicNumber:
    p = x.prime
    if x.is_zero:
        raise DivisionByZero("0 has no canonical n-th root decomposition")
    if math.gcd(n, p) != 1:
        raise ResidueObstruction(f"gcd({n}, {p}) != 1")
    v = x.valuation.finite
    if v % n != 0:
        raise ValuationNotDivisible(f"v(x) = {v} is not divisible by {n}")
    u = x.unit_part()
    u0 = u.unit_digits[0]
    w0 = next((w for w in range(1, p) if pow(w, n, p) == u0 % p), None)
    if w0 is None:
        raise NotAnNthPower(f"{u0} is not an n-th power in F_{p}")
    # u = w0^n * (1 + m) with v(m) >= 1, then root = p^(v/n) * w0 * (1+m)^(1/n)
    m = u / (w0**n) - 1
    if m.is_zero:
        e = PadicNumber.from_int(1, p, prec)
    else:
        e = nth_root_one_plus(m, n, prec)
    scale = Fraction(p) ** (v // n) * w0
    root = PadicNumber.from_rational(scale.numerator, scale.denominator, p, prec) * e
    _assert_agree(root**n, x)
    return root


def _assert_agree(a: PadicNumber, b: PadicNumber) -> None:
    """Check two values coincide through their shared trusted window.

    Full cancellation of the windowed difference *is* agreement at
    precision, so PrecisionLoss here counts as success.
    """
    try:
        diff = a - b
    except PrecisionLoss:
        return
    assert diff.is_zero, f"values disagree: {a} vs {b}"


def _series_nth_root(x: LaurentSeries, n: int, prec: int) -> LaurentSeries:
    field = x.field
    if x.is_zero:
        raise DivisionByZero("0 has no canonical n-th root decomposition")
    if field.char and math.gcd(n, field.char) != 1:
        raise ResidueObstruction(f"gcd({n}, char {field.char}) != 1")
    v = x.offset
    if v % n != 0:
        raise ValuationNotDivisible(f"v(x) = {v} is not divisible by {n}")
    c = x.coefficients[0]
    w0 = _field_nth_root(field, c, n)
    # scale to 1 + f and iterate W <- W - (W^n - g)/(n W^(n-1))
    g = LaurentSeries(
        field,
        0,
        tuple(field.mul(field.inv(c), z) for z in x.coefficients),
        None if x.cap is None else x.cap - v,
        _checked=True,
    )
    rel = prec if g.cap is None else min(prec, g.cap)
    g = g.truncated(rel)
    w = LaurentSeries.one(field).truncated(rel)
    for _ in range(_MAX_NEWTON_STEPS):
        err = w**n - g
        if err.is_zero or err.offset >= rel:
            break
        w = w - err * (n * w ** (n - 1)).invert(rel)
    scaled = LaurentSeries(
        field,
        w.offset + v // n,
        tuple(field.mul(field.coerce(w0), z) for z in w.coefficients),
        None if w.cap is None else w.cap + v // n,
        _checked=True,
    )
    return scaled


def _field_nth_root(field, c, n: int):
    if isinstance(field, PrimeField):
        for w in range(1, field.p):
            if pow(w, n, field.p) == c % field.p:
                return w
        raise NotAnNthPower(f"{c} is not an n-th power in {field}")
    if isinstance(field, RationalField):
        frac = Fraction(c)
        sign = -1 if frac < 0 else 1
        if sign < 0 and n % 2 == 0:
            raise NotAnNthPower(f"{c} < 0 has no real {n}-th root in Q")
        num = round(abs(frac.numerator) ** (1 / n))
        den = round(frac.denominator ** (1 / n))
        for dn in (num - 1, num, num + 1):
            for dd in (den - 1, den, den + 1):
                if dn > 0 and dd > 0 and Fraction(sign * dn, dd) ** n == frac:
                    return Fraction(sign * dn, dd)
        raise NotAnNthPower(f"{c} is not an n-th power in Q")
    raise NotAnNthPower(f"no n-th root search over {field}")


# --- square / power classification --------------------------------------


def is_square(x: PadicNumber) -> bool:
    """Squareness in Q_p: even valuation and square unit part.

    For odd p the unit class is decided by the Legendre symbol; for p = 2
    by the unit being 1 mod 8 (validated against exhaustive squaring in
    the tests).
    """
    if x.is_zero:
        return True
    p = x.prime
    v = x.valuation.finite
    if v % 2 != 0:
        return False
    if p != 2:
        u0 = x.unit_digits[0]
        return pow(u0, (p - 1) // 2, p) == 1
    if x.known_precision < 3 and not x.is_exact:
        raise PrecisionLoss("need the unit part mod 8 to classify 2-adic squares")
    return x.unit_part().integer_representative(3) % 8 == 1


def is_nth_power(x: PadicNumber, n: int) -> bool:
    """Solubility of y^n = x in Q_p for p coprime to n."""
    if x.is_zero:
        return True
    p = x.prime
    if math.gcd(n, p) != 1:
        raise ResidueObstruction(f"gcd({n}, {p}) != 1")
    if n == 2:
        return is_square(x)
    v = x.valuation.finite
    if v % n != 0:
        return False
    if p == 2:
        # odd n: units of Z_2 are n-th powers (x -> x^n is an automorphism)
        return True
    u0 = x.unit_digits[0]
    return any(pow(w, n, p) == u0 for w in range(1, p))


def zp_membership_via_definability(a: PadicNumber, p: int | None = None) -> tuple[bool, bool]:
    """(claimed, ground truth) for the ring-language membership predicate.

    For odd p membership in Z_p is claimed iff 1 + p*a^2 is a square; for
    p = 2 iff 1 + 2*a^3 is a cube. The ground truth is simply v(a) >= 0;
    calling code asserts the two agree.
    """
    if p is not None and p != a.prime:
        raise ValueError(f"value is {a.prime}-adic, asked about {p}")
    p = a.prime
    truth = a.is_zero or a.valuation >= 0
    if p != 2:
        c = 1 + p * a * a
        claimed = is_square(c)
        if claimed and not c.is_zero:
            _verify_power_solution(c, 2)
    else:
        c = 1 + 2 * a * a * a
        claimed = is_nth_power(c, 3)
        if claimed and not c.is_zero:
            _verify_power_solution(c, 3)
    return claimed, truth


def _verify_power_solution(c: PadicNumber, n: int, prec: int = 8) -> PadicNumber:
    """Produce and check an actual root of Y^n = c, via a Hensel lift."""
    p = c.prime
    v = c.valuation.finite
    u = c.unit_part()
    root_u = _padic_unit_nth_root(u, n, prec)
    _assert_agree(root_u**n, u.with_precision(min(prec, u.known_precision) if not u.is_exact else prec))
    scale = Fraction(p) ** (v // n)
    return root_u * PadicNumber.from_rational(scale.numerator, scale.denominator, p, prec)


def _padic_unit_nth_root(u: PadicNumber, n: int, prec: int) -> PadicNumber:
    p = u.prime
    u0 = u.unit_digits[0]
    if p != 2:
        w0 = next(w for w in range(1, p) if pow(w, n, p) == u0)
        rep = u.integer_representative(prec)
        poly = UniPoly(IntegerRing(), [-rep] + [0] * (n - 1) + [1])
        return simple_zero_lift(poly, p, w0, prec).root
    if n % 2 == 1:
        rep = u.integer_representative(prec)
        poly = UniPoly(IntegerRing(), [-rep] + [0] * (n - 1) + [1])
        return simple_zero_lift(poly, 2, rep % 2, prec).root
    # n = 2, u = 1 mod 8: strong lift on (1 + C)^2 - u
    rep = u.integer_representative(prec + 3)
    shifted = UniPoly(IntegerRing(), [1 - rep, 2, 1])
    return (1 + strong_zero_lift(shifted, 2, prec).root).with_precision(prec)
