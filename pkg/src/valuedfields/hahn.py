"""Truncated generalized power series k((t^Gamma)).

Exponents live in an ordered abelian group: the integers, the rationals,
or Z x Z ordered lexicographically. Only finite supports are
representable, with an optional truncation cap below which the series is
exactly known; general well-ordered infinite supports are out of
representational scope.

Inversion factors g = c*t^gamma*(1 - f) with v(f) > 0 and sums the
geometric series in f. Over the lexicographic group the sum need not pass
a given cap after finitely many terms (v(f) can be infinitesimal next to
the cap), in which case PrecisionLoss is raised after a term budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, GroupMismatch, ParseError, PrecisionLoss, RingMismatch
from .fields import QQ
from .valuation import INFINITY, ValuationValue

_GEOMETRIC_TERM_BUDGET = 4096


@dataclass(frozen=True)
class IntegerExponents:
    """Gamma = Z."""

    name = "Z"
    zero = 0

    def coerce(self, x):
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        raise GroupMismatch(f"{x!r} is not an integer exponent")

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def format(self, a) -> str:
        return str(a) if a >= 0 else f"({a})"


@dataclass(frozen=True)
class RationalExponents:
    """Gamma = Q."""

    name = "Q"
    zero = Fraction(0)

    def coerce(self, x):
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise GroupMismatch(f"{x!r} is not a rational exponent")

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def format(self, a) -> str:
        return str(a) if a >= 0 and a.denominator == 1 else f"({a})"


@dataclass(frozen=True)
class LexPairExponents:
    """Gamma = Z x Z with lexicographic order (tuple comparison)."""

    name = "ZxZ"
    zero = (0, 0)

    def coerce(self, x):
        if isinstance(x, tuple) and len(x) == 2 and all(isinstance(c, int) for c in x):
            return x
        raise GroupMismatch(f"{x!r} is not a pair exponent")

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def neg(self, a):
        return (-a[0], -a[1])

    def format(self, a) -> str:
        return f"({a[0]},{a[1]})"


Z_EXP = IntegerExponents()
Q_EXP = RationalExponents()
LEX_EXP = LexPairExponents()


class HahnSeries:
    """Finite-support series with strictly increasing exponents below a cap."""

    __slots__ = ("group", "field", "terms", "cap")

    def __init__(self, group, field, terms, cap=None, _checked=False):
        if not _checked:
            bucket: dict = {}
            for e, c in terms:
                e = group.coerce(e)
                c = field.coerce(c)
                bucket[e] = field.add(bucket.get(e, field.zero), c)
            if cap is not None:
                cap = group.coerce(cap)
            pairs = sorted(
                ((e, c) for e, c in bucket.items() if not field.is_zero(c)),
                key=lambda ec: ec[0],
            )
            if cap is not None:
                pairs = [(e, c) for e, c in pairs if e < cap]
            terms = tuple(pairs)
        self.group = group
        self.field = field
        self.terms = terms
        self.cap = cap

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, group=Q_EXP, field=QQ, cap=None) -> "HahnSeries":
        return cls(group, field, (), cap, _checked=True)

    @classmethod
    def one(cls, group=Q_EXP, field=QQ) -> "HahnSeries":
        return cls(group, field, ((group.zero, field.one),), None, _checked=True)

    @classmethod
    def monomial(cls, exponent, coefficient=1, group=Q_EXP, field=QQ) -> "HahnSeries":
        return cls(group, field, ((exponent, coefficient),))

    # -- structure ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def valuation(self) -> ValuationValue:
        return INFINITY if self.is_zero else ValuationValue(self.terms[0][0])

    def leading_coefficient(self):
        if self.is_zero:
            return self.field.zero
        return self.terms[0][1]

    def coefficient(self, exponent):
        exponent = self.group.coerce(exponent)
        if self.cap is not None and not exponent < self.cap:
            raise PrecisionLoss(f"coefficient at t^{exponent} lies beyond the cap")
        for e, c in self.terms:
            if e == exponent:
                return c
        return self.field.zero

    def residue(self):
        if self.is_zero or self.terms[0][0] != self.group.zero:
            return self.field.zero
        return self.terms[0][1]

    def angular_component(self):
        return self.leading_coefficient()

    def truncated(self, cap) -> "HahnSeries":
        cap = self.group.coerce(cap)
        if self.cap is not None and self.cap < cap:
            raise PrecisionLoss("cannot extend a truncated series")
        return HahnSeries(self.group, self.field, self.terms, cap)

    # -- arithmetic -----------------------------------------------------

    def _check(self, other) -> "HahnSeries":
        if isinstance(other, HahnSeries):
            if other.group != self.group:
                raise GroupMismatch(f"mixed exponent groups {self.group.name}, {other.group.name}")
            if other.field != self.field:
                raise RingMismatch("mixed coefficient fields")
            return other
        if isinstance(other, (int, Fraction)):
            return HahnSeries(self.group, self.field, ((self.group.zero, other),))
        raise RingMismatch(f"cannot interpret {other!r} as a generalized series")

    def __add__(self, other):
        other = self._check(other)
        cap = _cap_min(self.cap, other.cap)
        return HahnSeries(self.group, self.field, self.terms + other.terms, cap)

    __radd__ = __add__

    def __neg__(self):
        return HahnSeries(
            self.group,
            self.field,
            tuple((e, self.field.neg(c)) for e, c in self.terms),
            self.cap,
            _checked=True,
        )

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        cap = _mul_cap(self, other)
        out = []
        for ea, ca in self.terms:
            for eb, cb in other.terms:
                out.append((self.group.add(ea, eb), self.field.mul(ca, cb)))
        return HahnSeries(self.group, self.field, out, cap)

    __rmul__ = __mul__

    def invert(self, cap=None) -> "HahnSeries":
        return hahn_invert(self, cap)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("use invert for negative powers")
        out = HahnSeries.one(self.group, self.field)
        for _ in range(n):
            out = out * self
        return out

    # -- equality / display ----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, HahnSeries):
            return NotImplemented
        return (
            self.group == other.group
            and self.field == other.field
            and self.terms == other.terms
            and self.cap == other.cap
        )

    def __hash__(self):
        return hash((self.group, self.field, self.terms, self.cap))

    def __str__(self):
        pieces = []
        for e, c in self.terms:
            negative = isinstance(c, Fraction) and c < 0
            body = self.field.format(self.field.neg(c) if negative else c)
            if e != self.group.zero:
                shown = self.field.neg(c) if negative else c
                if shown == self.field.one:
                    body = f"t^{self.group.format(e)}"
                else:
                    body = f"{body}*t^{self.group.format(e)}"
            pieces.append(("-" if negative else "+", body))
        if self.cap is not None:
            pieces.append(("+", f"O(t^{self.group.format(self.cap)})"))
        if not pieces:
            return "0"
        sign, first = pieces[0]
        text = ("-" if sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"HahnSeries({self})"


def _cap_min(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _mul_cap(a: HahnSeries, b: HahnSeries):
    caps = []
    for s, t in ((a, b), (b, a)):
        if s.cap is not None:
            ev = t.terms[0][0] if t.terms else t.cap
            if ev is None:
                return s.cap if s.is_zero else None  # exact zero absorbs
            caps.append(s.group.add(s.cap, ev))
    if not caps:
        return None
    return min(caps)


def hahn_arith(kind: str, a: HahnSeries, b: HahnSeries | None = None) -> HahnSeries:
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown operation {kind!r}")


def hahn_invert(g: HahnSeries, cap=None, term_budget: int = _GEOMETRIC_TERM_BUDGET) -> HahnSeries:
    """Inverse below a cap via g = c*t^gamma*(1 - f) and sum over f^n.

    The sum terminates because v(f^n) = n*v(f) eventually clears the cap;
    over the lexicographic group that can fail (v(f) may be infinitesimal
    against the cap), which surfaces as PrecisionLoss after term_budget
    terms.
    """
    group, field = g.group, g.field
    if g.is_zero:
        if g.cap is None:
            raise DivisionByZero("cannot invert 0")
        raise PrecisionLoss("series is 0 below its cap; inverse unknowable")
    gamma, c = g.terms[0]
    cinv = field.inv(c)
    neg_gamma = group.neg(gamma)
    rel_cap = None  # precision target relative to the monic part
    if g.cap is not None:
        rel_cap = group.add(g.cap, neg_gamma)
    if cap is not None:
        cap = group.coerce(cap)
        # requested: g * result == 1 below cap (an absolute exponent)
        rel_cap = _cap_min(rel_cap, cap)
    monic_terms = tuple((group.add(e, neg_gamma), field.mul(cinv, x)) for e, x in g.terms)
    monic = HahnSeries(group, field, monic_terms, rel_cap, _checked=False)
    f = HahnSeries.one(group, field) - monic
    if f.is_zero and f.cap is None:
        geom = HahnSeries.one(group, field)
    else:
        if rel_cap is None:
            raise PrecisionLoss("inverse has infinite support; supply a cap")
        if not f.is_zero and not _geometric_reaches(f.terms[0][0], rel_cap):
            # v(f) infinitesimal against the cap: the true support below the
            # cap is infinite (possible only for non-archimedean Gamma)
            raise PrecisionLoss(
                f"no multiple of v(f) = {f.terms[0][0]} reaches the cap {rel_cap}"
            )
        geom = HahnSeries.one(group, field).truncated(rel_cap)
        power = geom
        count = 0
        while True:
            power = power * f
            if power.cap is None or rel_cap < power.cap:
                power = power.truncated(rel_cap)
            if power.is_zero:
                break
            geom = geom + power
            count += 1
            if count > term_budget:
                raise PrecisionLoss(
                    f"geometric sum did not clear the cap within {term_budget} terms"
                )
    out_terms = tuple((group.add(e, neg_gamma), field.mul(cinv, x)) for e, x in geom.terms)
    out_cap = None if geom.cap is None else group.add(geom.cap, neg_gamma)
    return HahnSeries(group, field, out_terms, out_cap, _checked=False)


def _geometric_reaches(vf, cap) -> bool:
    """Whether some multiple n*v(f) clears the cap (always true for Z, Q)."""
    if not isinstance(vf, tuple):
        return True
    if vf[0] > 0:
        return True
    # vf = (0, b) with b > 0 climbs only the second coordinate
    return cap[0] <= 0


def hahn_valuation_residue_ac(f: HahnSeries):
    """(v(f), res(f), ac(f)) with the valuation_core conventions."""
    return f.valuation, f.residue(), f.angular_component()


def parse_hahn(text: str, field=QQ, group=Q_EXP) -> HahnSeries:
    """Parse ``3*t^(-1/2) + 1 + O(t^5)``; pair exponents as ``t^(1,2)``."""
    import re

    s = text.replace(" ", "")
    if s in ("", "0"):
        return HahnSeries.zero(group, field)
    token = re.compile(
        r"(?P<sign>[+-])?"
        r"(?:O\(t(?:\^(?P<ocap>\([^)]*\)|-?\d+(?:/\d+)?))?\)"
        r"|(?:(?P<coef>\d+(?:/\d+)?)\*?)?"
        r"(?:t(?:\^(?P<exp>\([^)]*\)|-?\d+(?:/\d+)?))?)?"
        r")"
    )
    pos = 0
    terms = []
    cap = None
    while pos < len(s):
        m = token.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input {s[pos:]!r}", pos, ("term",))
        sign = -1 if m.group("sign") == "-" else 1
        chunk = m.group(0).lstrip("+-")
        if chunk.startswith("O("):
            if m.group("ocap") is None:
                raise ParseError("O-term needs an exponent", pos, ("O(t^k)",))
            cap = _parse_exponent(m.group("ocap"), group, pos)
        else:
            coef = m.group("coef")
            has_t = "t" in chunk
            if coef is None and not has_t:
                raise ParseError(f"empty term at {pos}", pos, ("coefficient", "t"))
            cv = Fraction(coef) if coef else Fraction(1)
            cv *= sign
            e = group.zero
            if has_t:
                raw = m.group("exp")
                e = _parse_exponent(raw, group, pos) if raw is not None else group.coerce(1)
            terms.append((e, field.coerce(cv)))
        pos = m.end()
    return HahnSeries(group, field, terms, cap)


def _parse_exponent(raw: str, group, pos: int):
    raw = raw.strip()
    if raw.startswith("(") and raw.endswith(")"):
        raw = raw[1:-1]
    if "," in raw:
        a, b = raw.split(",")
        return group.coerce((int(a), int(b)))
    return group.coerce(Fraction(raw))
