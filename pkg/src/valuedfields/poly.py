"""Exact polynomial arithmetic over the toolkit's rings.

UniPoly is dense (constant term first, no trailing zeros); MultiPoly is a
sparse exponent-vector -> integer-coefficient map; Form is a MultiPoly
with a homogeneity certificate. Taylor coefficients are computed by the
binomial recurrence, which avoids dividing by factorials and therefore
works in every characteristic.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import ArityMismatch, BecameZero, ParseError, RingMismatch
from .fields import IntegerRing, PrimeField, RationalField, ZZ


class UniPoly:
    """Univariate polynomial with exact coefficients."""

    __slots__ = ("ring", "coefficients")

    def __init__(self, ring, coefficients, _checked=False):
        if not _checked:
            coefficients = [ring.coerce(c) for c in coefficients]
            while coefficients and ring.is_zero(coefficients[-1]):
                coefficients.pop()
            coefficients = tuple(coefficients)
        self.ring = ring
        self.coefficients = coefficients

    @classmethod
    def zero(cls, ring=ZZ) -> "UniPoly":
        return cls(ring, (), _checked=True)

    @classmethod
    def x_power(cls, n: int, ring=ZZ) -> "UniPoly":
        return cls(ring, (0,) * n + (1,))

    @property
    def degree(self):
        """Degree, or None for the zero polynomial."""
        return len(self.coefficients) - 1 if self.coefficients else None

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.ring == other.ring and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.ring, self.coefficients))

    def __add__(self, other):
        if self.ring != other.ring:
            raise RingMismatch("polynomials live over different rings")
        n = max(len(self.coefficients), len(other.coefficients))
        out = []
        for i in range(n):
            a = self.coefficients[i] if i < len(self.coefficients) else self.ring.zero
            b = other.coefficients[i] if i < len(other.coefficients) else self.ring.zero
            out.append(self.ring.add(a, b))
        return UniPoly(self.ring, out)

    def __neg__(self):
        return UniPoly(self.ring, tuple(self.ring.neg(c) for c in self.coefficients), _checked=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            if self.ring != other.ring:
                raise RingMismatch("polynomials live over different rings")
            out = [self.ring.zero] * (len(self.coefficients) + len(other.coefficients))
            for i, a in enumerate(self.coefficients):
                for j, b in enumerate(other.coefficients):
                    out[i + j] = self.ring.add(out[i + j], self.ring.mul(a, b))
            return UniPoly(self.ring, out)
        c = self.ring.coerce(other)
        return UniPoly(self.ring, tuple(self.ring.mul(c, x) for x in self.coefficients))

    __rmul__ = __mul__

    def derivative(self) -> "UniPoly":
        out = [
            self.ring.mul(self.ring.coerce(i), c)
            for i, c in enumerate(self.coefficients)
            if i >= 1
        ]
        return UniPoly(self.ring, out)

    def evaluate(self, a):
        """Horner evaluation; `a` may be any value whose operators accept
        the scalar coefficients (ints, Fractions, p-adics, series)."""
        if not self.coefficients:
            return self.ring.zero
        acc = self.coefficients[-1]
        for c in reversed(self.coefficients[:-1]):
            acc = acc * a + c
        return acc

    def eval_with_derivative(self, a):
        return self.evaluate(a), self.derivative().evaluate(a)

    def taylor_coefficients(self) -> tuple["UniPoly", ...]:
        """The P_i with P(X+Y) = sum_i P_i(X) Y^i.

        P_i has coefficients binom(m, i) * a_m at X^(m-i); integrality is
        preserved because the binomials are integers.
        """
        n = self.degree
        if n is None:
            return (self,)
        out = []
        for i in range(n + 1):
            coeffs = []
            for j in range(n - i + 1):
                binom = math.comb(i + j, i)
                coeffs.append(self.ring.mul(self.ring.coerce(binom), self.coefficients[i + j]))
            out.append(UniPoly(self.ring, coeffs))
        return tuple(out)

    def shift(self, c) -> "UniPoly":
        """P(c + X), via the Taylor coefficients."""
        c = self.ring.coerce(c)
        return UniPoly(self.ring, tuple(q.evaluate(c) for q in self.taylor_coefficients()))

    def reduce(self, p: int) -> "UniPoly":
        return UniPoly(PrimeField(p), self.coefficients)

    def __str__(self):
        if not self.coefficients:
            return "0"
        parts = []
        for i, c in enumerate(self.coefficients):
            if self.ring.is_zero(c):
                continue
            if i == 0:
                parts.append(self.ring.format(c))
            elif i == 1:
                parts.append(f"{self.ring.format(c)}*x" if c != 1 else "x")
            else:
                parts.append(f"{self.ring.format(c)}*x^{i}" if c != 1 else f"x^{i}")
        return " + ".join(reversed(parts))

    def __repr__(self):
        return f"UniPoly({self})"


def poly_eval_and_derivative(P: UniPoly, a):
    """Exact (P(a), P'(a))."""
    if isinstance(P.ring, PrimeField) and not isinstance(a, int):
        raise RingMismatch("polynomials over F_p evaluate at integer residues")
    value, deriv = P.eval_with_derivative(a)
    if isinstance(P.ring, PrimeField):
        value %= P.ring.p
        deriv %= P.ring.p
    return value, deriv


def taylor_coefficients(P: UniPoly) -> tuple[UniPoly, ...]:
    return P.taylor_coefficients()


class MultiPoly:
    """Sparse multivariate polynomial with exact integer coefficients."""

    __slots__ = ("nvars", "monomials")

    def __init__(self, nvars: int, monomials, _checked=False):
        if not _checked:
            clean = {}
            for exps, c in dict(monomials).items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != nvars:
                    raise ArityMismatch(f"exponent vector {exps} has wrong length")
                if any(e < 0 for e in exps):
                    raise ValueError("exponents must be non-negative")
                c = int(c)
                if c:
                    clean[exps] = clean.get(exps, 0) + c
            monomials = {e: c for e, c in clean.items() if c}
        self.nvars = nvars
        self.monomials = dict(monomials)

    @property
    def is_zero(self) -> bool:
        return not self.monomials

    def total_degree(self):
        if not self.monomials:
            return None
        return max(sum(e) for e in self.monomials)

    def has_constant_term(self) -> bool:
        return tuple([0] * self.nvars) in self.monomials

    def homogeneous_degree(self):
        """The common monomial degree, or None if not homogeneous."""
        degrees = {sum(e) for e in self.monomials}
        return degrees.pop() if len(degrees) == 1 else None

    def evaluate(self, point, modulus: int | None = None) -> int:
        if len(point) != self.nvars:
            raise ArityMismatch(f"expected {self.nvars} coordinates, got {len(point)}")
        total = 0
        for exps, c in self.monomials.items():
            term = c
            for x, e in zip(point, exps):
                if e:
                    term *= pow(x, e, modulus) if modulus else x**e
            total += term
        return total % modulus if modulus else total

    def partial_derivative(self, i: int) -> "MultiPoly":
        out: dict[tuple, int] = {}
        for exps, c in self.monomials.items():
            if exps[i] == 0:
                continue
            new = list(exps)
            new[i] -= 1
            key = tuple(new)
            out[key] = out.get(key, 0) + c * exps[i]
        return MultiPoly(self.nvars, out)

    def coordinate_section(self, i: int, point) -> UniPoly:
        """Univariate polynomial in x_i with the other coordinates frozen."""
        if len(point) != self.nvars:
            raise ArityMismatch(f"expected {self.nvars} coordinates, got {len(point)}")
        coeffs: dict[int, int] = {}
        for exps, c in self.monomials.items():
            term = c
            for j, (x, e) in enumerate(zip(point, exps)):
                if j != i and e:
                    term *= x**e
            coeffs[exps[i]] = coeffs.get(exps[i], 0) + term
        top = max(coeffs) if coeffs else -1
        return UniPoly(ZZ, [coeffs.get(d, 0) for d in range(top + 1)])

    def __add__(self, other):
        if self.nvars != other.nvars:
            raise ArityMismatch("mixed variable counts")
        out = dict(self.monomials)
        for e, c in other.monomials.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.nvars, out)

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.monomials.items()}, _checked=True)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: k * c for e, c in self.monomials.items()})

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.monomials == other.monomials

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.monomials.items()))))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"MultiPoly({self})"


@dataclass(frozen=True)
class Form:
    """Homogeneous polynomial with its degree certificate."""

    poly: MultiPoly
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("forms have degree >= 1")
        actual = self.poly.homogeneous_degree()
        if actual != self.degree:
            raise ValueError(
                f"polynomial is not homogeneous of degree {self.degree} (found {actual})"
            )

    @classmethod
    def from_poly(cls, poly: MultiPoly) -> "Form":
        d = poly.homogeneous_degree()
        if d is None or d < 1:
            raise ValueError("polynomial is not a form")
        return cls(poly, d)

    @property
    def nvars(self) -> int:
        return self.poly.nvars

    def evaluate(self, point, modulus: int | None = None) -> int:
        return self.poly.evaluate(point, modulus)

    def __str__(self):
        return str(self.poly)


def form_evaluate(F, point, modulus: int | None = None) -> int:
    poly = F.poly if isinstance(F, Form) else F
    return poly.evaluate(point, modulus)


def restrict_last_variable(F: Form) -> Form:
    """Substitute 0 for the last variable; error if the variable divides F."""
    if F.nvars < 2:
        raise ArityMismatch("need at least two variables to restrict")
    kept = {e[:-1]: c for e, c in F.poly.monomials.items() if e[-1] == 0}
    if not kept:
        raise BecameZero("the last variable divides every monomial")
    return Form(MultiPoly(F.nvars - 1, kept), F.degree)


# --- text syntax ---------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))")


def _tokenize_poly(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r}", pos, ("token",))
            break
        if m.group("int"):
            out.append(("int", int(m.group("int")), m.start()))
        elif m.group("name"):
            out.append(("name", m.group("name"), m.start()))
        else:
            out.append(("op", m.group("op"), m.start()))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _PolyParser:
    """Recursive descent over +, -, *, ^ with integer coefficients."""

    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0
        self.vars: list[str] = []

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos, (op,))

    def var_index(self, name: str) -> int:
        if name not in self.vars:
            self.vars.append(name)
        return self.vars.index(name)

    def parse(self):
        terms = self.expr()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ParseError("trailing input", pos, ("end of input",))
        return terms

    def expr(self):
        # monomial dicts keyed by sparse {var_index: exponent}
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = {e: -c for e, c in acc.items()}
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                nxt = self.term()
                s = -1 if val == "-" else 1
                for e, c in nxt.items():
                    acc[e] = acc.get(e, 0) + s * c
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.next()
                acc = _mono_mul(acc, self.factor())
            elif kind in ("int", "name") or (kind == "op" and val == "("):
                # implicit multiplication: 3x, 2(x+y)
                acc = _mono_mul(acc, self.factor())
            else:
                return acc

    def factor(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            kind, e, pos = self.next()
            if kind != "int":
                raise ParseError("exponent must be a literal integer", pos, ("integer",))
            out = {(): 1}
            for _ in range(e):
                out = _mono_mul(out, base)
            return out
        return base

    def atom(self):
        kind, val, pos = self.next()
        if kind == "int":
            return {(): val}
        if kind == "name":
            return {((self.var_index(val), 1),): 1}
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "op" and val == "-":
            inner = self.factor()
            return {e: -c for e, c in inner.items()}
        raise ParseError(f"unexpected token {val!r}", pos, ("integer", "variable", "("))


def _mono_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            joined: dict[int, int] = {}
            for i, e in ea:
                joined[i] = joined.get(i, 0) + e
            for i, e in eb:
                joined[i] = joined.get(i, 0) + e
            key = tuple(sorted(joined.items()))
            out[key] = out.get(key, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def parse_polynomial(text: str) -> tuple[MultiPoly, tuple[str, ...]]:
    """Parse `x1^4 + x2^4 - x1^2*x2^2` style text.

    If every variable is named x<k>, the arity is max(k); otherwise
    variables are numbered in order of first appearance.
    """
    parser = _PolyParser(_tokenize_poly(text))
    terms = parser.parse()
    names = parser.vars
    indexed = all(re.fullmatch(r"[A-Za-z]\d+", n) for n in names) and names
    if indexed:
        order = {n: int(n[1:]) - 1 for n in names}
        nvars = max(order.values()) + 1
        all_names = tuple(
            next((n for n in names if order[n] == i), f"x{i + 1}") for i in range(nvars)
        )
    else:
        order = {n: i for i, n in enumerate(names)}
        nvars = len(names)
        all_names = tuple(names)
    monos: dict[tuple, int] = {}
    for sparse, c in terms.items():
        exps = [0] * nvars
        for idx, e in sparse:
            exps[order[names[idx]]] = e
        key = tuple(exps)
        monos[key] = monos.get(key, 0) + c
    return MultiPoly(max(nvars, 1), monos), all_names if names else ("x1",)


def parse_form(text: str) -> Form:
    poly, _ = parse_polynomial(text)
    return Form.from_poly(poly)


def parse_unipoly(text: str) -> UniPoly:
    poly, _ = parse_polynomial(text)
    if poly.nvars != 1:
        raise ParseError("expected a univariate polynomial", 0, ("single variable",))
    top = poly.total_degree()
    if top is None:
        return UniPoly.zero(ZZ)
    coeffs = [0] * (top + 1)
    for exps, c in poly.monomials.items():
        coeffs[exps[0]] = c
    return UniPoly(ZZ, coeffs)


def format_polynomial(poly: MultiPoly, names: tuple[str, ...] | None = None) -> str:
    if poly.is_zero:
        return "0"
    if names is None:
        names = tuple(f"x{i + 1}" for i in range(poly.nvars))
    parts = []
    for exps, c in sorted(poly.monomials.items(), key=lambda kv: (-sum(kv[0]), kv[0])):
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        body = "*".join(factors)
        if not body:
            piece = str(abs(c))
        elif abs(c) == 1:
            piece = body
        else:
            piece = f"{abs(c)}*{body}"
        parts.append(("- " if c < 0 else "+ ") + piece)
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]
