"""Exact truncated arithmetic for Q_p and k((t)).

A p-adic value is kept in canonical unit form

    p^v * (d0 + d1*p + d2*p^2 + ...)        d0 != 0, 0 <= di < p

together with the number of trusted unit digits (relative precision,
default 32). A Laurent series is kept as the dense coefficient window
starting at its valuation, with an optional truncation cap.

Values constructed from rationals (or exact integer data) additionally
remember the rational they stand for; arithmetic among such values is
carried out on the rationals and re-expanded, so cancellation never
destroys information. Purely windowed values follow the relative
precision rules: multiplication keeps the minimum relative precision,
addition of equal-valuation values loses one trusted digit per cancelled
leading digit, and a sum whose whole trusted window cancels raises
PrecisionLoss rather than pretending to be zero.

All values are immutable; operations are pure functions.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

from .errors import (
    DivisionByZero,
    PrecisionLoss,
    PrimeMismatch,
    ParseError,
    RingMismatch,
)
from .fields import PrimeField, QQ, RationalField, check_prime

DEFAULT_PRECISION = 32


@total_ordering
class ValuationValue:
    """An element of the value group extended by the absorbing infinity.

    The finite payload is an int for discrete valuations, a Fraction or a
    lexicographic pair for the generalized-series value groups. Infinity
    compares above every finite value and absorbs addition; negating it is
    not allowed.
    """

    __slots__ = ("_finite",)

    def __init__(self, finite=None):
        self._finite = finite

    @classmethod
    def of(cls, finite) -> "ValuationValue":
        return cls(finite)

    @property
    def is_infinite(self) -> bool:
        return self._finite is None

    @property
    def finite(self):
        if self._finite is None:
            raise ValueError("valuation is infinite")
        return self._finite

    def __eq__(self, other):
        if isinstance(other, ValuationValue):
            return self._finite == other._finite
        if self._finite is None:
            return False
        return self._finite == other

    def __hash__(self):
        return hash(("ValuationValue", self._finite))

    def __lt__(self, other):
        if not isinstance(other, ValuationValue):
            other = ValuationValue(other)
        if self._finite is None:
            return False
        if other._finite is None:
            return True
        return self._finite < other._finite

    def __add__(self, other):
        if not isinstance(other, ValuationValue):
            other = ValuationValue(other)
        if self._finite is None or other._finite is None:
            return INFINITY
        a, b = self._finite, other._finite
        if isinstance(a, tuple):
            return ValuationValue(tuple(x + y for x, y in zip(a, b)))
        return ValuationValue(a + b)

    __radd__ = __add__

    def __neg__(self):
        if self._finite is None:
            raise ValueError("-infinity is not representable")
        if isinstance(self._finite, tuple):
            return ValuationValue(tuple(-x for x in self._finite))
        return ValuationValue(-self._finite)

    def __repr__(self):
        return "oo" if self._finite is None else repr(self._finite)

    def __str__(self):
        return "oo" if self._finite is None else str(self._finite)


INFINITY = ValuationValue(None)


def vp_int(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("vp(0) is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_fraction(x: Fraction, p: int) -> int:
    if x == 0:
        raise ValueError("vp(0) is infinite")
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


def _digits_of(n: int, p: int, count: int) -> tuple[int, ...]:
    out = []
    for _ in range(count):
        n, r = divmod(n, p)
        out.append(r)
    return tuple(out)


class PadicNumber:
    """Canonical truncated element of Q_p.

    Attributes:
        prime: the prime p.
        unit_digits: trusted digits of the unit part, least significant
            first; the first digit is nonzero unless the value is zero.
        known_precision: number of trusted digits (== len(unit_digits)).
        is_exact: whether the value is backed by an exact rational.
    """

    __slots__ = ("prime", "_val", "unit_digits", "known_precision", "_frac")

    def __init__(self, prime, val, digits, frac=None, _checked=False):
        if not _checked:
            check_prime(prime)
            digits = tuple(int(d) for d in digits)
            if val is None:
                if digits:
                    raise ValueError("zero must have empty digits")
                if frac is not None and frac != 0:
                    raise ValueError("inconsistent exact zero")
                frac = Fraction(0) if frac is not None else frac
            else:
                if not digits:
                    raise ValueError("nonzero value needs at least one digit")
                if digits[0] == 0:
                    raise ValueError("leading unit digit must be nonzero")
                if any(d < 0 or d >= prime for d in digits):
                    raise ValueError("digits out of range")
        self.prime = prime
        self._val = val
        self.unit_digits = digits
        self.known_precision = len(digits)
        self._frac = frac

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> "PadicNumber":
        return cls(p, None, (), Fraction(0))

    @classmethod
    def from_rational(cls, num, den=1, p: int = 2, prec: int = DEFAULT_PRECISION) -> "PadicNumber":
        check_prime(p)
        if den == 0:
            raise DivisionByZero("denominator is zero")
        if prec < 1:
            raise ValueError("precision must be positive")
        frac = Fraction(num, den)
        return cls._from_frac(frac, p, prec)

    @classmethod
    def from_int(cls, n: int, p: int, prec: int = DEFAULT_PRECISION) -> "PadicNumber":
        return cls.from_rational(n, 1, p, prec)

    @classmethod
    def _from_frac(cls, frac: Fraction, p: int, prec: int) -> "PadicNumber":
        if frac == 0:
            return cls.zero(p)
        v = vp_fraction(frac, p)
        unit = frac / Fraction(p) ** v
        modulus = p**prec
        num = unit.numerator % (modulus * p)  # sign folded into the residue
        den = unit.denominator
        rep = num * pow(den, -1, modulus) % modulus
        digits = _digits_of(rep, p, prec)
        return cls(p, v, digits, frac, _checked=True)

    @classmethod
    def from_digits(cls, p: int, valuation: int, digits, exact: bool = False) -> "PadicNumber":
        """Windowed value from explicit digits (exact=True asserts the tail is zero)."""
        digits = tuple(int(d) for d in digits)
        frac = None
        if exact:
            unit = sum(d * p**i for i, d in enumerate(digits))
            frac = Fraction(unit) * Fraction(p) ** valuation
        return cls(p, valuation, digits, frac)

    @classmethod
    def from_integer_window(cls, n: int, p: int, abs_prec: int) -> "PadicNumber":
        """Value of an integer known only modulo p^abs_prec."""
        check_prime(p)
        n %= p**abs_prec
        if n == 0:
            raise PrecisionLoss(f"integer is 0 mod {p}^{abs_prec}: valuation unknown")
        v = vp_int(n, p)
        digits = _digits_of(n // p**v, p, abs_prec - v)
        return cls(p, v, digits, None, _checked=True)

    # -- structure ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self._val is None

    @property
    def is_exact(self) -> bool:
        return self._frac is not None

    @property
    def valuation(self) -> ValuationValue:
        return INFINITY if self._val is None else ValuationValue(self._val)

    @property
    def exact_rational(self) -> Fraction:
        if self._frac is None:
            raise ValueError("value is not exact")
        return self._frac

    def unit_int(self) -> int:
        p = self.prime
        return sum(d * p**i for i, d in enumerate(self.unit_digits))

    def truncated(self, prec: int | None = None) -> "PadicNumber":
        """Forget exactness (and optionally digits): a purely windowed copy."""
        if self.is_zero:
            raise PrecisionLoss("cannot truncate zero to a finite window")
        if prec is None:
            prec = self.known_precision
        if prec > self.known_precision and not self.is_exact:
            raise PrecisionLoss("cannot extend a windowed value")
        if self.is_exact and prec != self.known_precision:
            return self._from_frac(self._frac, self.prime, prec).truncated()
        return PadicNumber(self.prime, self._val, self.unit_digits[:prec], None)

    def with_precision(self, prec: int) -> "PadicNumber":
        if self.is_zero:
            return self
        if self.is_exact:
            return self._from_frac(self._frac, self.prime, prec)
        if prec > self.known_precision:
            raise PrecisionLoss("cannot extend a windowed value")
        return PadicNumber(self.prime, self._val, self.unit_digits[:prec], None)

    def unit_part(self) -> "PadicNumber":
        """Same digits at valuation 0."""
        if self.is_zero:
            raise DivisionByZero("zero has no unit part")
        frac = None if self._frac is None else self._frac / Fraction(self.prime) ** self._val
        return PadicNumber(self.prime, 0, self.unit_digits, frac, _checked=True)

    def integer_representative(self, abs_prec: int) -> int:
        """The value as an integer mod p^abs_prec (requires v >= 0 and trust)."""
        if self.is_zero:
            if self.is_exact:
                return 0
            raise PrecisionLoss("windowed zero has no representative")
        if self._val < 0:
            raise ValueError("negative valuation has no integer representative")
        if not self.is_exact and self._val + self.known_precision < abs_prec:
            raise PrecisionLoss(
                f"trusted through p^{self._val + self.known_precision}, need p^{abs_prec}"
            )
        if self.is_exact:
            frac = self._frac
            m = self.prime**abs_prec
            return frac.numerator * pow(frac.denominator, -1, m) % m
        return self.unit_int() * self.prime**self._val % self.prime**abs_prec

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> "PadicNumber":
        if isinstance(other, PadicNumber):
            if other.prime != self.prime:
                raise PrimeMismatch(f"mixed primes {self.prime} and {other.prime}")
            return other
        if isinstance(other, (int, Fraction)):
            prec = self.known_precision if not self.is_zero else DEFAULT_PRECISION
            return PadicNumber.from_rational(other, 1, self.prime, prec)
        raise RingMismatch(f"cannot interpret {other!r} as a {self.prime}-adic number")

    def _window_widened(self, abs_target: int) -> "PadicNumber":
        """Re-expand an exact value so its absolute window reaches abs_target."""
        if not self.is_exact or self.is_zero:
            return self
        need = abs_target - self._val
        if need > self.known_precision:
            return self._from_frac(self._frac, self.prime, need)
        return self

    def __add__(self, other):
        other = self._coerce(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.is_exact and other.is_exact:
            prec = min(self.known_precision, other.known_precision)
            return self._from_frac(self._frac + other._frac, self.prime, prec)
        # the exact side carries unlimited absolute trust: widen it first
        a = self._window_widened(other._val + other.known_precision)
        b = other._window_widened(self._val + self.known_precision)
        p = a.prime
        va, ua, ka = a._val, a.unit_int(), a.known_precision
        vb, ub, kb = b._val, b.unit_int(), b.known_precision
        # Absolute trust: a is known mod p^(va+ka) (as a scaled unit), same for b.
        window = min(va + ka, vb + kb)
        v0 = min(va, vb)
        m = window - v0
        s = (ua * p ** (va - v0) + ub * p ** (vb - v0)) % p**m
        if s == 0:
            raise PrecisionLoss(
                f"sum cancels through the whole trusted window (p^{window})"
            )
        d = vp_int(s, p)
        digits = _digits_of(s // p**d, p, m - d)
        return PadicNumber(p, v0 + d, digits, None, _checked=True)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero:
            return self
        if self.is_exact:
            return self._from_frac(-self._frac, self.prime, self.known_precision)
        k = self.known_precision
        rep = -self.unit_int() % self.prime**k
        return PadicNumber(self.prime, self._val, _digits_of(rep, self.prime, k), None, _checked=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero or other.is_zero:
            if (self.is_zero and self.is_exact) or (other.is_zero and other.is_exact):
                return PadicNumber.zero(self.prime)
            raise PrecisionLoss("product with a windowed zero")
        if self.is_exact and other.is_exact:
            prec = min(self.known_precision, other.known_precision)
            return self._from_frac(self._frac * other._frac, self.prime, prec)
        p = self.prime
        k = max(self.known_precision, other.known_precision) if (
            self.is_exact or other.is_exact
        ) else min(self.known_precision, other.known_precision)
        a = self if not self.is_exact else self._window_widened(self._val + k)
        b = other if not other.is_exact else other._window_widened(other._val + k)
        k = min(a.known_precision, b.known_precision)
        rep = a.unit_int() * b.unit_int() % p**k
        return PadicNumber(p, a._val + b._val, _digits_of(rep, p, k), None, _checked=True)

    __rmul__ = __mul__

    def invert(self) -> "PadicNumber":
        if self.is_zero:
            raise DivisionByZero("cannot invert 0")
        if self.is_exact:
            return self._from_frac(1 / self._frac, self.prime, self.known_precision)
        p, k = self.prime, self.known_precision
        rep = pow(self.unit_int(), -1, p**k)
        return PadicNumber(p, -self._val, _digits_of(rep, p, k), None, _checked=True)

    def __truediv__(self, other):
        return self * self._coerce(other).invert()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.invert()

    def __pow__(self, n: int):
        if n == 0:
            return PadicNumber.from_int(1, self.prime, max(1, self.known_precision))
        base = self if n > 0 else self.invert()
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out

    # -- residue data ---------------------------------------------------

    def residue(self) -> int:
        if self.is_zero or self._val > 0:
            return 0
        if self._val < 0:
            return 0  # res extends by zero outside the valuation ring
        return self.unit_digits[0]

    def angular_component(self) -> int:
        return 0 if self.is_zero else self.unit_digits[0]

    # -- equality / display ----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PadicNumber):
            return NotImplemented
        return (
            self.prime == other.prime
            and self._val == other._val
            and self.unit_digits == other.unit_digits
        )

    def __hash__(self):
        return hash((self.prime, self._val, self.unit_digits))

    def __repr__(self):
        return f"PadicNumber({self})"

    def __str__(self):
        if self.is_zero:
            return "0"
        p, v, k = self.prime, self._val, self.known_precision
        parts = []
        for i, d in enumerate(self.unit_digits):
            if i == 0:
                parts.append(str(d))
            elif i == 1:
                parts.append(f"{d}*{p}")
            else:
                parts.append(f"{d}*{p}^{i}")
        body = " + ".join(parts + [f"O({p}^{k})"])
        return f"{p}^{v} * ({body})"


def parse_padic(text: str, p: int | None = None) -> PadicNumber:
    """Parse the canonical rendering ``p^v * (d0 + d1*p + ... + O(p^k))``."""
    s = text.strip()
    if s == "0":
        if p is None:
            raise ParseError("prime required to parse 0", 0)
        return PadicNumber.zero(p)
    import re

    m = re.match(r"^(\d+)\^(-?\d+)\s*\*\s*\((.*)\)$", s)
    if not m:
        raise ParseError("expected p^v * (digits + O(p^k))", 0, ("p^v * (...)",))
    prime, val = int(m.group(1)), int(m.group(2))
    if p is not None and prime != p:
        raise PrimeMismatch(f"text is {prime}-adic, expected {p}-adic")
    body = m.group(3)
    digits: dict[int, int] = {}
    prec = None
    for term in (t.strip() for t in body.split("+")):
        om = re.match(rf"^O\({prime}\^(\d+)\)$", term)
        if om:
            prec = int(om.group(1))
            continue
        tm = re.match(rf"^(\d+)(?:\*{prime}(?:\^(\d+))?)?$", term)
        if tm is None:
            raise ParseError(f"bad digit term {term!r}", text.find(term), ("digit term",))
        d = int(tm.group(1))
        i = 0
        if f"*{prime}" in term:
            i = int(tm.group(2)) if tm.group(2) else 1
        digits[i] = d
    if prec is None:
        raise ParseError("missing O(p^k) term", len(text), ("O(p^k)",))
    seq = tuple(digits.get(i, 0) for i in range(prec))
    return PadicNumber(prime, val, seq)


class LaurentSeries:
    """Truncated formal Laurent series over F_p or Q.

    The coefficient window runs from the valuation ``offset`` up to (but
    excluding) ``cap``; ``cap=None`` means the series is exact, i.e. its
    support is known in full.
    """

    __slots__ = ("field", "offset", "coefficients", "cap")

    def __init__(self, field, offset: int, coefficients, cap=None, _checked=False):
        if not _checked:
            coefficients = tuple(field.coerce(c) for c in coefficients)
            # canonical: shift away leading zeros, strip exact tails
            while coefficients and field.is_zero(coefficients[0]):
                coefficients = coefficients[1:]
                offset += 1
            if cap is None:
                while coefficients and field.is_zero(coefficients[-1]):
                    coefficients = coefficients[:-1]
            else:
                if coefficients and offset + len(coefficients) > cap:
                    coefficients = coefficients[: cap - offset]
                    while coefficients and field.is_zero(coefficients[0]):
                        coefficients = coefficients[1:]
                        offset += 1
                if coefficients:
                    coefficients = coefficients + (field.zero,) * (
                        cap - offset - len(coefficients)
                    )
            if not coefficients:
                offset = 0
        self.field = field
        self.offset = offset
        self.coefficients = coefficients
        self.cap = cap

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, field, cap=None) -> "LaurentSeries":
        return cls(field, 0, (), cap, _checked=True)

    @classmethod
    def one(cls, field) -> "LaurentSeries":
        return cls(field, 0, (field.one,), None, _checked=True)

    @classmethod
    def constant(cls, field, c, cap=None) -> "LaurentSeries":
        return cls(field, 0, (c,), cap)

    @classmethod
    def generator(cls, field) -> "LaurentSeries":
        """The series t."""
        return cls(field, 1, (field.one,), None, _checked=True)

    @classmethod
    def from_terms(cls, field, terms: dict, cap=None) -> "LaurentSeries":
        if not terms:
            return cls.zero(field, cap)
        lo = min(terms)
        hi = max(terms) + 1
        coeffs = [terms.get(i, 0) for i in range(lo, hi)]
        return cls(field, lo, coeffs, cap)

    # -- structure ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def is_exact(self) -> bool:
        return self.cap is None

    @property
    def valuation(self) -> ValuationValue:
        return INFINITY if self.is_zero else ValuationValue(self.offset)

    @property
    def known_precision(self):
        """Window length (None for exact series)."""
        if self.cap is None:
            return None
        return self.cap - self.offset if self.coefficients else self.cap

    def coefficient(self, i: int):
        if self.coefficients and self.offset <= i < self.offset + len(self.coefficients):
            return self.coefficients[i - self.offset]
        if self.cap is not None and i >= self.cap:
            raise PrecisionLoss(f"coefficient of t^{i} lies beyond the cap t^{self.cap}")
        return self.field.zero

    def residue(self):
        if self.is_zero or self.offset != 0:
            return self.field.zero  # res extends by zero outside K[[t]]
        return self.coefficients[0]

    def angular_component(self):
        return self.field.zero if self.is_zero else self.coefficients[0]

    def truncated(self, cap: int) -> "LaurentSeries":
        """Restrict knowledge to exponents below cap."""
        if self.cap is not None and cap > self.cap:
            raise PrecisionLoss("cannot extend a truncated series")
        return LaurentSeries(self.field, self.offset, self.coefficients, cap)

    # -- arithmetic -----------------------------------------------------

    def _check(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            if other.field != self.field:
                raise RingMismatch(f"mixed coefficient fields {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentSeries.constant(self.field, self.field.coerce(other))
        raise RingMismatch(f"cannot interpret {other!r} as a series over {self.field}")

    def __add__(self, other):
        other = self._check(other)
        cap = _min_cap(self.cap, other.cap)
        terms: dict[int, object] = {}
        for s in (self, other):
            for i, c in enumerate(s.coefficients):
                e = s.offset + i
                if cap is None or e < cap:
                    terms[e] = self.field.add(terms.get(e, self.field.zero), c)
        terms = {e: c for e, c in terms.items() if not self.field.is_zero(c)}
        return LaurentSeries.from_terms(self.field, terms, cap)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(
            self.field,
            self.offset,
            tuple(self.field.neg(c) for c in self.coefficients),
            self.cap,
            _checked=True,
        )

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) + (-self)

    def _effective_valuation(self):
        if self.coefficients:
            return self.offset
        return self.cap  # zero-below-cap: everything known is zero

    def __mul__(self, other):
        other = self._check(other)
        if self.is_zero or other.is_zero:
            if (self.is_zero and self.cap is None) or (other.is_zero and other.cap is None):
                return LaurentSeries.zero(self.field)
            caps = []
            for a, b in ((self, other), (other, self)):
                if a.is_zero and a.cap is not None:
                    ev = b._effective_valuation()
                    caps.append(None if ev is None else a.cap + ev)
            cap = _min_cap(*caps) if caps else None
            return LaurentSeries.zero(self.field, cap)
        cap = _min_cap(
            None if self.cap is None else self.cap + other.offset,
            None if other.cap is None else other.cap + self.offset,
        )
        terms: dict[int, object] = {}
        for i, a in enumerate(self.coefficients):
            if self.field.is_zero(a):
                continue
            for j, b in enumerate(other.coefficients):
                e = self.offset + i + other.offset + j
                if cap is not None and e >= cap:
                    continue
                terms[e] = self.field.add(terms.get(e, self.field.zero), self.field.mul(a, b))
        terms = {e: c for e, c in terms.items() if not self.field.is_zero(c)}
        return LaurentSeries.from_terms(self.field, terms, cap)

    __rmul__ = __mul__

    def invert(self, prec: int | None = None) -> "LaurentSeries":
        """Inverse via g = c*t^gamma*(1 - f) and the geometric sum over f."""
        if self.is_zero:
            if self.cap is None:
                raise DivisionByZero("cannot invert 0")
            raise PrecisionLoss("series is 0 below its cap; inverse unknowable")
        gamma = self.offset
        c = self.coefficients[0]
        cinv = self.field.inv(c)
        rel = self.cap - gamma if self.cap is not None else None
        if prec is None:
            prec = rel if rel is not None else DEFAULT_PRECISION
        if rel is not None:
            prec = min(prec, rel)
        # monic = 1 - f with v(f) > 0
        monic = LaurentSeries(
            self.field,
            0,
            tuple(self.field.mul(cinv, x) for x in self.coefficients),
            None if self.cap is None else rel,
            _checked=True,
        )
        f = LaurentSeries.one(self.field) - monic
        if f.is_zero and f.cap is None:
            geom = LaurentSeries.one(self.field)  # exact monomial
        else:
            geom = LaurentSeries.one(self.field).truncated(prec)
            power = geom
            if not f.is_zero:
                vf = f.offset
                n = 1
                while n * vf < prec:
                    power = power * f
                    geom = geom + power
                    n += 1
        shifted = LaurentSeries(
            self.field,
            geom.offset - gamma,
            tuple(self.field.mul(cinv, x) for x in geom.coefficients),
            None if geom.cap is None else geom.cap - gamma,
            _checked=True,
        )
        return shifted

    def __truediv__(self, other):
        return self * self._check(other).invert()

    def __pow__(self, n: int):
        if n == 0:
            return LaurentSeries.one(self.field)
        base = self if n > 0 else self.invert()
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out

    # -- equality / display ----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.field == other.field
            and self.offset == other.offset
            and self.coefficients == other.coefficients
            and self.cap == other.cap
        )

    def __hash__(self):
        return hash((self.field, self.offset, self.coefficients, self.cap))

    def __repr__(self):
        return f"LaurentSeries({self})"

    def __str__(self):
        pieces = []
        for i, c in enumerate(self.coefficients):
            if self.field.is_zero(c):
                continue
            e = self.offset + i
            negative = isinstance(c, Fraction) and c < 0
            body = self.field.format(-c if negative else c)
            if e != 0:
                es = "" if e == 1 else ("^" + (str(e) if e >= 0 else f"({e})"))
                body = f"{body}*t{es}"
            pieces.append(("-" if negative else "+", body))
        if self.cap is not None:
            cs = str(self.cap) if self.cap >= 0 else f"({self.cap})"
            pieces.append(("+", f"O(t^{cs})"))
        if not pieces:
            return "0"
        sign, first = pieces[0]
        text = ("-" if sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text


def _min_cap(*caps):
    finite = [c for c in caps if c is not None]
    return min(finite) if finite else None


def parse_laurent(text: str, field=QQ) -> LaurentSeries:
    """Parse ``c_v*t^v + ... + O(t^m)`` (exponents may be parenthesized)."""
    import re

    s = text.replace(" ", "")
    if s in ("0", ""):
        return LaurentSeries.zero(field)
    token = re.compile(
        r"(?P<sign>[+-])?"
        r"(?:O\(t\^?(?:\((?P<ocap1>-?\d+)\)|(?P<ocap2>-?\d+))?\)"
        r"|(?:(?P<coef>\d+(?:/\d+)?)\*?)?"
        r"(?:t(?:\^(?:\((?P<exp1>-?\d+)\)|(?P<exp2>-?\d+)))?)?"
        r")"
    )
    pos = 0
    terms: dict[int, object] = {}
    cap = None
    while pos < len(s):
        m = token.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input {s[pos:]!r}", pos, ("term",))
        sign = -1 if m.group("sign") == "-" else 1
        if m.group(0).lstrip("+-").startswith("O("):
            c = m.group("ocap1") or m.group("ocap2")
            if c is None:
                raise ParseError("O-term needs an exponent", pos, ("O(t^k)",))
            cap = int(c)
        else:
            coef = m.group("coef")
            has_t = "t" in m.group(0)
            if coef is None and not has_t:
                raise ParseError(f"empty term at {pos}", pos, ("coefficient", "t"))
            cv = Fraction(coef) if coef else Fraction(1)
            cv *= sign
            e = 0
            if has_t:
                es = m.group("exp1") or m.group("exp2")
                e = int(es) if es is not None else 1
            val = field.coerce(cv)
            prev = terms.get(e, field.zero)
            terms[e] = field.add(prev, val)
        pos = m.end()
    terms = {e: c for e, c in terms.items() if not field.is_zero(c)}
    return LaurentSeries.from_terms(field, terms, cap)


# --- module-level operation surface ------------------------------------


def padic_from_rational(num: int, den: int, p: int, prec: int = DEFAULT_PRECISION) -> PadicNumber:
    return PadicNumber.from_rational(num, den, p, prec)


def padic_arith(kind: str, a: PadicNumber, b: PadicNumber | None = None) -> PadicNumber:
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "neg":
        return -a
    if kind == "invert":
        return a.invert()
    raise ValueError(f"unknown operation {kind!r}")


def series_arith(kind: str, a: LaurentSeries, b: LaurentSeries | None = None) -> LaurentSeries:
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "invert":
        return a.invert()
    raise ValueError(f"unknown operation {kind!r}")


def valuation(x) -> ValuationValue:
    return x.valuation


def residue(x):
    return x.residue()


def angular_component(x):
    return x.angular_component()
