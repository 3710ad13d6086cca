"""Zero counting and solubility of forms over F_p, Z_p and Q_p.

Exhaustive counting backs the Chevalley-Warning divisibility check; the
p-adic searcher enumerates primitive residue vectors level by level and
promotes any candidate that satisfies the coordinatewise Newton criterion
v(F(x)) > 2*v(dF/dx_i(x)). A bounded search that finds nothing returns
Unresolved -- it never claims insolubility. The one insolubility proof in
the module is the quartic descent certificate in 18 variables, whose two
driving lemmas are machine-checked on every run.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import DomainTooLarge, HypothesisFailed, SingularResidueZero
from .fields import check_prime
from .hensel import simple_zero_lift, strong_zero_lift
from .poly import Form, MultiPoly
from .valuation import PadicNumber, vp_int

COUNT_GUARD = 10**8
LEVEL_GUARD = 10**7


@dataclass(frozen=True)
class ZeroCount:
    polynomial: MultiPoly
    prime: int
    count: int
    nontrivial_zero: tuple[int, ...] | None


@dataclass(frozen=True)
class ChevalleyWarningReport:
    nvars: int
    degree: int
    divisor_exponent: int
    count: int
    divisible: bool
    nontrivial_zero: tuple[int, ...] | None


@dataclass(frozen=True)
class PadicZeroCertificate:
    """A primitive vector with v(F(x)) >= precision, checked before return."""

    vector: tuple[PadicNumber, ...]
    precision: int
    pivot_index: int
    pivot_valuation: int
    integer_representatives: tuple[int, ...] = field(repr=False, default=())


@dataclass(frozen=True)
class Unresolved:
    """Search exhausted without a certificate; NOT a proof of insolubility."""

    reason: str
    levels_searched: int


def count_zeros_ff(f: MultiPoly, p: int, guard: int = COUNT_GUARD) -> ZeroCount:
    """Exact N(f) over F_p by exhaustive enumeration."""
    check_prime(p)
    n = f.nvars
    if p**n > guard:
        raise DomainTooLarge(f"{p}^{n} points exceed the enumeration guard {guard}")
    maxdeg = max((max(e) for e in f.monomials), default=0)
    pows = [[pow(x, e, p) for e in range(maxdeg + 1)] for x in range(p)]
    monos = [(exps, c % p) for exps, c in f.monomials.items()]
    count = 0
    witness = None
    for point in itertools.product(range(p), repeat=n):
        total = 0
        for exps, c in monos:
            term = c
            for x, e in zip(point, exps):
                if e:
                    term = term * pows[x][e] % p
            total += term
        if total % p == 0:
            count += 1
            if witness is None and any(point):
                witness = point
    return ZeroCount(f, p, count, witness)


def chevalley_warning_check(f: MultiPoly, p: int, guard: int = COUNT_GUARD) -> ChevalleyWarningReport:
    """Verify p^a | N(f) with a the largest integer strictly below n/d."""
    n = f.nvars
    d = f.total_degree()
    if d is None or n <= d:
        raise HypothesisFailed(f"need more variables than the degree (n={n}, d={d})")
    a = (n - 1) // d
    zc = count_zeros_ff(f, p, guard)
    divisible = zc.count % p**a == 0
    witness = zc.nontrivial_zero
    if not f.has_constant_term():
        assert witness is not None, "no constant term forces a nontrivial zero"
    return ChevalleyWarningReport(n, d, a, zc.count, divisible, witness)


def _partials(poly: MultiPoly):
    return [poly.partial_derivative(i) for i in range(poly.nvars)]


def certify_vector(F, p: int, vector, prec: int) -> PadicZeroCertificate:
    """Build and machine-check a certificate from integer representatives."""
    poly = F.poly if isinstance(F, Form) else F
    reps = tuple(int(x) for x in vector)
    if all(r % p == 0 for r in reps):
        raise ValueError("vector is not primitive")
    value = poly.evaluate(reps)
    if value != 0 and vp_int(value, p) < prec:
        raise ValueError(f"v_p(F(x)) = {vp_int(value, p)} < {prec}: not a certificate")
    best_i, best_v = 0, None
    for i, dF in enumerate(_partials(poly)):
        dv = dF.evaluate(reps)
        if dv != 0:
            v = vp_int(dv, p)
            if best_v is None or v < best_v:
                best_i, best_v = i, v
    pivot_val = best_v if best_v is not None else -1
    entries = tuple(
        PadicNumber.from_int(r, p, prec) if r else PadicNumber.zero(p) for r in reps
    )
    return PadicZeroCertificate(entries, prec, best_i, pivot_val, reps)


def lift_residue_zero(P: MultiPoly, p: int, residue_zero, prec: int) -> PadicZeroCertificate:
    """Lift a smooth residue zero by Newton in one coordinate.

    Refuses singular residue zeros (all partials vanishing mod p): the
    lifting theorem still promises a zero for almost all p there, but it
    gives no algorithm.
    """
    check_prime(p)
    z = tuple(int(c) % p for c in residue_zero)
    if len(z) != P.nvars:
        raise ValueError(f"expected {P.nvars} coordinates")
    if P.evaluate(z, p) != 0:
        raise HypothesisFailed("the vector is not a zero mod p")
    pivot = None
    for i, dF in enumerate(_partials(P)):
        if dF.evaluate(z, p) != 0:
            pivot = i
            break
    if pivot is None:
        raise SingularResidueZero("every partial derivative vanishes mod p")
    section = P.coordinate_section(pivot, z)
    lifted = simple_zero_lift(section, p, z[pivot], prec)
    coord = 0 if lifted.root.is_zero else lifted.root.integer_representative(prec)
    reps = tuple(coord if i == pivot else z[i] for i in range(P.nvars))
    value = P.evaluate(reps)
    assert value == 0 or vp_int(value, p) >= prec
    assert tuple(r % p for r in reps) == z
    entries = tuple(
        PadicNumber.from_integer_window(r, p, prec)
        if i == pivot and r
        else (PadicNumber.from_int(r, p, prec) if r else PadicNumber.zero(p))
        for i, r in enumerate(reps)
    )
    return PadicZeroCertificate(entries, prec, pivot, 0, reps)


def padic_zero_search(
    F: Form,
    p: int,
    target_prec: int,
    depth_cap: int = 4,
    level_guard: int = LEVEL_GUARD,
) -> PadicZeroCertificate | Unresolved:
    """Search for a nontrivial p-adic zero of a form.

    Levels m = 1..depth_cap enumerate primitive vectors mod p^m in
    lexicographic order; a candidate is promoted when v(F(x)) exceeds
    twice the best partial-derivative valuation, at which point a
    single-coordinate Newton lift runs to target_prec. The first promoted
    candidate wins, so results are deterministic.
    """
    check_prime(p)
    poly = F.poly
    n = poly.nvars
    partials = _partials(poly)
    if p**n > level_guard:
        raise DomainTooLarge(f"{p}^{n} residue vectors exceed the level guard")
    levels_done = 0
    for m in range(1, depth_cap + 1):
        if p ** (m * n) > level_guard:
            break
        box = p**m
        for vec in itertools.product(range(box), repeat=n):
            if all(c % p == 0 for c in vec):
                continue
            value = poly.evaluate(vec)
            if value == 0:
                return certify_vector(F, p, vec, target_prec)
            vF = vp_int(value, p)
            if vF == 0:
                continue
            best_i, best_v = None, None
            for i, dF in enumerate(partials):
                dv = dF.evaluate(vec)
                if dv != 0:
                    v = vp_int(dv, p)
                    if best_v is None or v < best_v:
                        best_i, best_v = i, v
            if best_v is None or vF <= 2 * best_v:
                continue
            cert = _newton_refine(F, p, vec, best_i, target_prec)
            if cert is not None:
                return cert
        levels_done = m
    reason = "depth cap exhausted" if levels_done >= depth_cap else "level guard exceeded"
    return Unresolved(reason, levels_done)


def _newton_refine(F: Form, p: int, vec, pivot: int, prec: int) -> PadicZeroCertificate | None:
    section = F.poly.coordinate_section(pivot, vec)
    shifted = section.shift(vec[pivot])
    try:
        lifted = strong_zero_lift(shifted, p, prec)
    except HypothesisFailed:
        return None
    if lifted.root.is_zero:
        delta = 0
    else:
        delta = lifted.root.integer_representative(prec)
    reps = tuple(vec[i] + delta if i == pivot else vec[i] for i in range(F.nvars))
    return certify_vector(F, p, reps, prec)


# --- the quartic descent certificate -------------------------------------


def terjanian_g() -> Form:
    """x^4 + y^4 + z^4 - x^2y^2 - x^2z^2 - y^2z^2 - xyz(x + y + z) in 3 variables."""
    monos = {
        (4, 0, 0): 1,
        (0, 4, 0): 1,
        (0, 0, 4): 1,
        (2, 2, 0): -1,
        (2, 0, 2): -1,
        (0, 2, 2): -1,
        (2, 1, 1): -1,
        (1, 2, 1): -1,
        (1, 1, 2): -1,
    }
    return Form(MultiPoly(3, monos), 4)


def terjanian_form() -> Form:
    """G(x1..x3) + G(x4..x6) + G(x7..x9) + 4G(x10..x12) + 4G(x13..x15) + 4G(x16..x18)."""
    g = terjanian_g().poly
    monos: dict[tuple, int] = {}
    for block in range(6):
        scale = 1 if block < 3 else 4
        off = 3 * block
        for exps, c in g.monomials.items():
            key = [0] * 18
            key[off : off + 3] = exps
            monos[tuple(key)] = scale * c
    return Form(MultiPoly(18, monos), 4)


@dataclass(frozen=True)
class DescentRejection:
    """Why a given vector cannot be a zero: v2(F(x)) computed exactly."""

    valuation: int
    common_valuation: int
    odd_blocks_first: int
    odd_blocks_last: int
    verified: bool


@dataclass(frozen=True)
class TerjanianReport:
    form: Form
    g: Form
    mod4_cases: int
    mod4_ok: bool
    scaling_ok: bool

    def reject(self, vector, prec: int = 12) -> DescentRejection:
        return terjanian_reject(vector, prec)


def terjanian_certificate() -> TerjanianReport:
    """Machine-check the two lemmas behind the descent, then hand back the
    rejecter that applies them to concrete vectors."""
    g = terjanian_g()
    cases = 0
    ok = True
    for triple in itertools.product(range(4), repeat=3):
        cases += 1
        value = g.evaluate(triple) % 4
        if any(x % 2 for x in triple):
            ok = ok and value == 1
        else:
            ok = ok and g.evaluate(triple) % 16 == 0
    assert ok, "the mod-4 lemma failed; the build is broken"
    scaling_ok = all(
        g.evaluate([2 * a, 2 * b, 2 * c]) == 16 * g.evaluate([a, b, c])
        for a, b, c in itertools.product(range(-2, 3), repeat=3)
    )
    assert scaling_ok
    return TerjanianReport(terjanian_form(), g, cases, ok, scaling_ok)


def terjanian_reject(vector, prec: int = 12) -> DescentRejection:
    """Prove v2(F(x)) finite for a nonzero 18-coordinate 2-adic vector.

    Divides out the common power of 2 (mu), then reads off the mod-4
    obstruction from the parity pattern of the six 3-variable blocks:
    v2(F(x)) = 4*mu + c with c in {0,1,2,3} determined by how many blocks
    of each half are not all even.
    """
    if prec < 6:
        raise ValueError("need precision >= 6 for the descent argument")
    reps = [int(x) % 2**prec for x in vector]
    if len(reps) != 18:
        raise ValueError("the form has 18 variables")
    finite = [vp_int(r, 2) for r in reps if r]
    if not finite:
        raise ValueError(f"vector is zero mod 2^{prec}")
    mu = min(finite)
    if mu >= prec:
        raise ValueError("vector is zero at the available precision")
    primitive = [r >> mu for r in reps]
    blocks = [primitive[3 * b : 3 * b + 3] for b in range(6)]
    odd = [any(x % 2 for x in blk) for blk in blocks]
    k_first = sum(odd[:3])
    k_last = sum(odd[3:])
    if k_first in (1, 3):
        c = 0
    elif k_first == 2:
        c = 1
    elif k_last in (1, 3):
        c = 2
    elif k_last == 2:
        c = 3
    else:
        raise AssertionError("primitive vector must have an odd block")
    predicted = 4 * mu + c
    value = terjanian_form().evaluate([int(x) for x in vector])
    verified = value != 0 and vp_int(value, 2) == predicted
    assert verified, "descent prediction failed against exact evaluation"
    return DescentRejection(predicted, mu, k_first, k_last, verified)
