"""Finite local rings Z/p^nZ and F_p[t]/(t^n) with a first-order evaluator.

Both ring kinds share the carrier size p^n, a residue field F_p, and a
principal maximal ideal generated by `t` (interpreted as p on one side
and as X on the other); they differ in characteristic and in whether the
residue field lifts. Sentences in the one-sorted ring language extended
by the constant t are parsed into a small syntax tree and evaluated by
exhaustive Tarskian truth, which is exact at desk scale. ake_compare runs
the same sentence over both ring families across a list of primes and
reports where they disagree.

Grammar (concrete syntax):

    formula  := implication
    implication := disjunction ('->' implication)?
    disjunction := conjunction ('|' conjunction)*
    conjunction := negation ('&' negation)*
    negation := '!' negation | 'forall' NAME '.' formula
              | 'exists' NAME '.' formula | atom
    atom     := term '=' term | '(' formula ')'
    term     := factor (('+'|'-') factor)*
    factor   := power ('*' power)*
    power    := unary ('^' INT)?
    unary    := '-' unary | INT | 't' | NAME | '(' term ')'

Integer literals k stand for 1 + ... + 1 (k times), negatives for the
additive inverse.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .errors import DomainTooLarge, ParseError, RingMismatch
from .fields import check_prime

ZMOD = "int-mod"
TRUNC = "trunc-poly"

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class FiniteLocalRing:
    """Z/p^nZ (kind 'int-mod') or F_p[t]/(t^n) (kind 'trunc-poly')."""

    kind: str
    prime: int
    nil_index: int

    def __post_init__(self):
        if self.kind not in (ZMOD, TRUNC):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        check_prime(self.prime)
        if self.nil_index < 1:
            raise ValueError("nilpotency index must be >= 1")

    @classmethod
    def zmod(cls, p: int, n: int) -> "FiniteLocalRing":
        return cls(ZMOD, p, n)

    @classmethod
    def trunc(cls, p: int, n: int) -> "FiniteLocalRing":
        return cls(TRUNC, p, n)

    @property
    def size(self) -> int:
        return self.prime**self.nil_index

    def __str__(self):
        if self.kind == ZMOD:
            return f"Z/{self.size}"
        return f"F_{self.prime}[t]/(t^{self.nil_index})"

    # -- elements ---------------------------------------------------------

    def element(self, rep) -> "RingElement":
        if self.kind == ZMOD:
            return RingElement(self, int(rep) % self.size)
        rep = tuple(int(c) % self.prime for c in rep)
        if len(rep) != self.nil_index:
            raise ValueError(f"need {self.nil_index} coefficients")
        return RingElement(self, rep)

    def from_int(self, k: int) -> "RingElement":
        """The interpretation of the literal k = 1 + ... + 1."""
        if self.kind == ZMOD:
            return RingElement(self, k % self.size)
        return RingElement(self, (k % self.prime,) + (0,) * (self.nil_index - 1))

    @property
    def zero(self) -> "RingElement":
        return self.from_int(0)

    @property
    def one(self) -> "RingElement":
        return self.from_int(1)

    @property
    def t(self) -> "RingElement":
        """The maximal-ideal generator: p on the int-mod side, X on the other."""
        if self.kind == ZMOD:
            return RingElement(self, self.prime % self.size)
        coeffs = [0] * self.nil_index
        if self.nil_index >= 2:
            coeffs[1] = 1
        return RingElement(self, tuple(coeffs))

    def elements(self):
        if self.kind == ZMOD:
            for r in range(self.size):
                yield RingElement(self, r)
        else:
            for coeffs in itertools.product(range(self.prime), repeat=self.nil_index):
                yield RingElement(self, coeffs)

    # -- arithmetic --------------------------------------------------------

    def _check(self, a: "RingElement") -> None:
        if a.ring != self:
            raise RingMismatch(f"element of {a.ring} used in {self}")

    def add(self, a: "RingElement", b: "RingElement") -> "RingElement":
        self._check(a)
        self._check(b)
        if self.kind == ZMOD:
            return RingElement(self, (a.rep + b.rep) % self.size)
        return RingElement(
            self, tuple((x + y) % self.prime for x, y in zip(a.rep, b.rep))
        )

    def neg(self, a: "RingElement") -> "RingElement":
        self._check(a)
        if self.kind == ZMOD:
            return RingElement(self, -a.rep % self.size)
        return RingElement(self, tuple(-x % self.prime for x in a.rep))

    def sub(self, a: "RingElement", b: "RingElement") -> "RingElement":
        return self.add(a, self.neg(b))

    def mul(self, a: "RingElement", b: "RingElement") -> "RingElement":
        self._check(a)
        self._check(b)
        if self.kind == ZMOD:
            return RingElement(self, a.rep * b.rep % self.size)
        n, p = self.nil_index, self.prime
        out = [0] * n
        for i, x in enumerate(a.rep):
            if x == 0:
                continue
            for j, y in enumerate(b.rep):
                if i + j < n:
                    out[i + j] = (out[i + j] + x * y) % p
        return RingElement(self, tuple(out))

    def is_unit(self, a: "RingElement") -> bool:
        self._check(a)
        if self.kind == ZMOD:
            return a.rep % self.prime != 0
        return a.rep[0] % self.prime != 0


@dataclass(frozen=True)
class RingElement:
    ring: FiniteLocalRing
    rep: object  # int for int-mod, tuple of digits for trunc-poly

    def __str__(self):
        if self.ring.kind == ZMOD:
            return str(self.rep)
        parts = []
        for i, c in enumerate(self.rep):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*t" if c != 1 else "t")
            else:
                parts.append(f"{c}*t^{i}" if c != 1 else f"t^{i}")
        return " + ".join(parts) if parts else "0"


def ring_arith(R: FiniteLocalRing, kind: str, a: RingElement, b: RingElement | None = None) -> RingElement:
    if kind == "add":
        return R.add(a, b)
    if kind == "mul":
        return R.mul(a, b)
    if kind == "neg":
        return R.neg(a)
    raise ValueError(f"unknown operation {kind!r}")


def digit_decompose(R: FiniteLocalRing, r: RingElement) -> tuple[int, ...]:
    """Digits a_0..a_{n-1} with r = sum a_i t^i; unique per the t-chain."""
    R._check(r)
    if R.kind == TRUNC:
        return tuple(r.rep)
    digits = []
    x = r.rep
    for _ in range(R.nil_index):
        x, d = divmod(x, R.prime)
        digits.append(d)
    return tuple(digits)


def digit_compose(R: FiniteLocalRing, digits) -> RingElement:
    acc = R.zero
    tpow = R.one
    for d in digits:
        acc = R.add(acc, R.mul(R.from_int(int(d)), tpow))
        tpow = R.mul(tpow, R.t)
    return acc


def residue_char_probe(R: FiniteLocalRing) -> tuple[int, int, bool]:
    """(characteristic, residue field order, does the residue field lift).

    The characteristic is the additive order of 1; a subfield copy of F_p
    exists exactly when that order is p.
    """
    order = 1
    acc = R.one
    while acc != R.zero:
        acc = R.add(acc, R.one)
        order += 1
        if order > R.size:
            raise AssertionError("additive order exceeded the carrier")
    char = order
    return char, R.prime, char == R.prime


# --- formulas -------------------------------------------------------------


@dataclass(frozen=True)
class Term:
    pass


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Lit(Term):
    value: int


@dataclass(frozen=True)
class Gen(Term):
    """The constant t."""


@dataclass(frozen=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Sub(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Neg(Term):
    inner: Term


@dataclass(frozen=True)
class Pow(Term):
    base: Term
    exponent: int


@dataclass(frozen=True)
class Formula:
    pass


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Not(Formula):
    inner: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


def quantifier_depth(phi: Formula) -> int:
    if isinstance(phi, Eq):
        return 0
    if isinstance(phi, Not):
        return quantifier_depth(phi.inner)
    if isinstance(phi, (And, Or, Implies)):
        return max(quantifier_depth(phi.left), quantifier_depth(phi.right))
    if isinstance(phi, (Forall, Exists)):
        return 1 + quantifier_depth(phi.body)
    raise TypeError(f"not a formula: {phi!r}")


def free_variables(phi: Formula) -> frozenset[str]:
    def term_vars(t: Term) -> frozenset[str]:
        if isinstance(t, Var):
            return frozenset((t.name,))
        if isinstance(t, (Lit, Gen)):
            return frozenset()
        if isinstance(t, (Add, Sub, Mul)):
            return term_vars(t.left) | term_vars(t.right)
        if isinstance(t, Neg):
            return term_vars(t.inner)
        if isinstance(t, Pow):
            return term_vars(t.base)
        raise TypeError(f"not a term: {t!r}")

    if isinstance(phi, Eq):
        return term_vars(phi.left) | term_vars(phi.right)
    if isinstance(phi, Not):
        return free_variables(phi.inner)
    if isinstance(phi, (And, Or, Implies)):
        return free_variables(phi.left) | free_variables(phi.right)
    if isinstance(phi, (Forall, Exists)):
        return free_variables(phi.body) - {phi.var}
    raise TypeError(f"not a formula: {phi!r}")


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<arrow>->)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[()=+\-*^.!&|]))"
)

_KEYWORDS = ("forall", "exists")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r}", pos, ("token",))
            break
        if m.group("arrow"):
            out.append(("op", "->", m.start()))
        elif m.group("int"):
            out.append(("int", int(m.group("int")), m.start()))
        elif m.group("name"):
            name = m.group("name")
            kind = "kw" if name in _KEYWORDS else ("t" if name == "t" else "name")
            out.append((kind, name, m.start()))
        else:
            out.append(("op", m.group("op"), m.start()))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _SentenceParser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind, value=None):
        k, v, pos = self.advance()
        if k != kind or (value is not None and v != value):
            want = value if value is not None else kind
            raise ParseError(f"expected {want!r}, found {v!r}", pos, (str(want),))
        return v

    def parse(self) -> Formula:
        phi = self.formula()
        k, v, pos = self.peek()
        if k != "end":
            raise ParseError(f"trailing input {v!r}", pos, ("end of input",))
        return phi

    def formula(self) -> Formula:
        left = self.disjunction()
        k, v, _ = self.peek()
        if k == "op" and v == "->":
            self.advance()
            return Implies(left, self.formula())  # right-associative
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while True:
            k, v, _ = self.peek()
            if k == "op" and v == "|":
                self.advance()
                left = Or(left, self.conjunction())
            else:
                return left

    def conjunction(self) -> Formula:
        left = self.negation()
        while True:
            k, v, _ = self.peek()
            if k == "op" and v == "&":
                self.advance()
                left = And(left, self.negation())
            else:
                return left

    def negation(self) -> Formula:
        k, v, _ = self.peek()
        if k == "op" and v == "!":
            self.advance()
            return Not(self.negation())
        if k == "kw":
            self.advance()
            name_kind, name, pos = self.advance()
            if name_kind != "name":
                raise ParseError(
                    f"quantifier binds a variable name, found {name!r}", pos, ("variable",)
                )
            self.expect("op", ".")
            body = self.formula()
            return Forall(name, body) if v == "forall" else Exists(name, body)
        return self.atom()

    def atom(self) -> Formula:
        # try `term = term` first; fall back to a parenthesized formula
        mark = self.i
        try:
            left = self.term()
            self.expect("op", "=")
            right = self.term()
            return Eq(left, right)
        except ParseError:
            self.i = mark
        k, v, pos = self.advance()
        if k == "op" and v == "(":
            phi = self.formula()
            self.expect("op", ")")
            return phi
        raise ParseError(f"expected an atom, found {v!r}", pos, ("term = term", "("))

    def term(self) -> Term:
        left = self.factor()
        while True:
            k, v, _ = self.peek()
            if k == "op" and v in "+-":
                self.advance()
                right = self.factor()
                left = Add(left, right) if v == "+" else Sub(left, right)
            else:
                return left

    def factor(self) -> Term:
        left = self.power()
        while True:
            k, v, _ = self.peek()
            if k == "op" and v == "*":
                self.advance()
                left = Mul(left, self.power())
            else:
                return left

    def power(self) -> Term:
        base = self.unary()
        k, v, _ = self.peek()
        if k == "op" and v == "^":
            self.advance()
            kk, e, pos = self.advance()
            if kk != "int":
                raise ParseError("exponent must be a literal integer", pos, ("integer",))
            return Pow(base, e)
        return base

    def unary(self) -> Term:
        k, v, pos = self.advance()
        if k == "op" and v == "-":
            return Neg(self.unary())
        if k == "int":
            return Lit(v)
        if k == "t":
            return Gen()
        if k == "name":
            return Var(v)
        if k == "op" and v == "(":
            inner = self.term()
            self.expect("op", ")")
            return inner
        raise ParseError(
            f"expected a term, found {v!r}", pos, ("integer", "variable", "t", "(")
        )


def parse_sentence(text: str) -> Formula:
    """Parse a closed formula; free variables are rejected."""
    phi = _SentenceParser(_tokenize(text)).parse()
    free = free_variables(phi)
    if free:
        raise ParseError(f"sentence has free variables {sorted(free)}", 0, ())
    return phi


def parse_formula(text: str) -> Formula:
    return _SentenceParser(_tokenize(text)).parse()


def _eval_term(R: FiniteLocalRing, t: Term, env: dict) -> RingElement:
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Lit):
        return R.from_int(t.value)
    if isinstance(t, Gen):
        return R.t
    if isinstance(t, Add):
        return R.add(_eval_term(R, t.left, env), _eval_term(R, t.right, env))
    if isinstance(t, Sub):
        return R.sub(_eval_term(R, t.left, env), _eval_term(R, t.right, env))
    if isinstance(t, Mul):
        return R.mul(_eval_term(R, t.left, env), _eval_term(R, t.right, env))
    if isinstance(t, Neg):
        return R.neg(_eval_term(R, t.inner, env))
    if isinstance(t, Pow):
        acc = R.one
        base = _eval_term(R, t.base, env)
        for _ in range(t.exponent):
            acc = R.mul(acc, base)
        return acc
    raise TypeError(f"not a term: {t!r}")


def evaluate(R: FiniteLocalRing, phi: Formula, budget: int = DEFAULT_BUDGET) -> bool:
    """Brute-force Tarskian truth over the p^n-element carrier."""
    if isinstance(phi, str):
        phi = parse_sentence(phi)
    free = free_variables(phi)
    if free:
        raise ValueError(f"cannot evaluate an open formula (free: {sorted(free)})")
    depth = quantifier_depth(phi)
    if R.size**depth > budget:
        raise DomainTooLarge(
            f"{R.size}^{depth} assignments exceed the budget {budget}"
        )
    return _eval(R, phi, {})


def _eval(R: FiniteLocalRing, phi: Formula, env: dict) -> bool:
    if isinstance(phi, Eq):
        return _eval_term(R, phi.left, env) == _eval_term(R, phi.right, env)
    if isinstance(phi, Not):
        return not _eval(R, phi.inner, env)
    if isinstance(phi, And):
        return _eval(R, phi.left, env) and _eval(R, phi.right, env)
    if isinstance(phi, Or):
        return _eval(R, phi.left, env) or _eval(R, phi.right, env)
    if isinstance(phi, Implies):
        return (not _eval(R, phi.left, env)) or _eval(R, phi.right, env)
    if isinstance(phi, Forall):
        return all(_eval(R, phi.body, {**env, phi.var: r}) for r in R.elements())
    if isinstance(phi, Exists):
        return any(_eval(R, phi.body, {**env, phi.var: r}) for r in R.elements())
    raise TypeError(f"not a formula: {phi!r}")


# --- the finite transfer experiment ---------------------------------------


@dataclass(frozen=True)
class AkeResult:
    prime: int
    zmod_truth: bool
    trunc_truth: bool


@dataclass(frozen=True)
class AkeReport:
    sentence: str
    nil_index: int
    results: tuple[AkeResult, ...]
    disagreement: tuple[int, ...]
    skipped: tuple[int, ...]

    def agreement_tail(self) -> tuple[int, ...]:
        """Primes past the last disagreement (where the two families agree)."""
        if not self.disagreement:
            return tuple(r.prime for r in self.results)
        last = max(self.disagreement)
        return tuple(r.prime for r in self.results if r.prime > last)


def ake_compare(sentence, n: int, primes, budget: int = DEFAULT_BUDGET) -> AkeReport:
    """Evaluate a sentence over Z/p^nZ and F_p[t]/(t^n) for each prime.

    Primes whose carriers blow the budget are skipped (and reported as
    such); the disagreement set collects primes where the two ring
    families decide the sentence differently.
    """
    phi = parse_sentence(sentence) if isinstance(sentence, str) else sentence
    text = sentence if isinstance(sentence, str) else str(sentence)
    results = []
    skipped = []
    disagreement = []
    for p in primes:
        check_prime(p)
        try:
            z = evaluate(FiniteLocalRing.zmod(p, n), phi, budget)
            f = evaluate(FiniteLocalRing.trunc(p, n), phi, budget)
        except DomainTooLarge:
            skipped.append(p)
            continue
        results.append(AkeResult(p, z, f))
        if z != f:
            disagreement.append(p)
    return AkeReport(text, n, tuple(results), tuple(disagreement), tuple(skipped))


def primes_up_to(bound: int) -> list[int]:
    sieve = [True] * (bound + 1)
    out = []
    for q in range(2, bound + 1):
        if sieve[q]:
            out.append(q)
            for mult in range(q * q, bound + 1, q):
                sieve[mult] = False
    return out
