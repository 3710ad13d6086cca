"""Finite-prefix checkers for pseudo-convergence.

True pc-sequences are ordinal-indexed; here a finite window of terms is
inspected and every "eventually" is resolved against an explicit tail
index. Verdicts therefore describe the window only: the classifier
answers `inconclusive` rather than extrapolate past the data.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .valuation import LaurentSeries, PadicNumber, ValuationValue

EVENTUALLY_CONSTANT = "eventually-constant"
EVENTUALLY_INCREASING = "eventually-strictly-increasing"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SequencePrefix:
    """A finite prefix (a_i) with properties required beyond tail_index."""

    values: tuple
    tail_index: int = 0

    def __post_init__(self):
        values = tuple(self.values)
        object.__setattr__(self, "values", values)
        if self.tail_index < 0:
            raise ValueError("tail_index must be >= 0")
        if len(values) < self.tail_index + 3:
            raise ValueError("prefix too short: need at least tail_index + 3 terms")
        kinds = {type(v) for v in values}
        if len(kinds) > 1:
            raise ValueError("mixed value kinds in one sequence")
        if values and isinstance(values[0], PadicNumber):
            primes = {v.prime for v in values}
            if len(primes) > 1:
                raise ValueError("mixed primes in one sequence")
        if values and isinstance(values[0], LaurentSeries):
            if len({v.field for v in values}) > 1:
                raise ValueError("mixed coefficient fields in one sequence")

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class PrefixCheck:
    ok: bool
    witness: tuple[int, ...] | None = None


def _v(x) -> ValuationValue:
    return x.valuation


def is_pc_prefix(s: SequencePrefix) -> PrefixCheck:
    """Triple condition v(a_j3 - a_j2) > v(a_j2 - a_j1) on the whole window."""
    vals = s.values
    for j1, j2, j3 in combinations(range(s.tail_index + 1, len(vals)), 3):
        if not _v(vals[j3] - vals[j2]) > _v(vals[j2] - vals[j1]):
            return PrefixCheck(False, (j1, j2, j3))
    return PrefixCheck(True)


def is_pseudolimit_prefix(s: SequencePrefix, a) -> bool:
    """Strict increase of v(a_i - a) beyond the tail index."""
    diffs = [_v(x - a) for x in s.values[s.tail_index + 1 :]]
    return all(diffs[i] < diffs[i + 1] for i in range(len(diffs) - 1))


def alpha_sequence(s: SequencePrefix) -> tuple[ValuationValue, ...]:
    """Consecutive-difference valuations alpha_i = v(a_{i+1} - a_i)."""
    vals = s.values
    return tuple(_v(vals[i + 1] - vals[i]) for i in range(len(vals) - 1))


def alpha_law_holds(s: SequencePrefix) -> bool:
    """v(a_j - a_i) = alpha_i for all j > i beyond the tail index."""
    vals = s.values
    alphas = alpha_sequence(s)
    for i in range(s.tail_index + 1, len(vals) - 1):
        for j in range(i + 1, len(vals)):
            if _v(vals[j] - vals[i]) != alphas[i]:
                return False
    return True


def valuation_pattern(s: SequencePrefix) -> str:
    """Classify (v(a_i)) on the window per the pc-sequence dichotomy.

    In a pc-sequence two equal consecutive valuations force the constant
    regime, which lets the window certify `eventually-constant` early; a
    throughout-increasing tail of at least three terms is reported as
    `eventually-strictly-increasing`; anything shorter or mixed is
    `inconclusive`.
    """
    check = is_pc_prefix(s)
    if not check.ok:
        raise ValueError(f"not a pc-prefix on the window (witness {check.witness})")
    tail = [_v(x) for x in s.values[s.tail_index + 1 :]]
    if len(tail) < 3:
        return INCONCLUSIVE
    for i in range(len(tail) - 1):
        if tail[i] == tail[i + 1]:
            if all(t == tail[i] for t in tail[i + 1 :]):
                return EVENTUALLY_CONSTANT
            return INCONCLUSIVE
    if all(tail[i] < tail[i + 1] for i in range(len(tail) - 1)):
        return EVENTUALLY_INCREASING
    return INCONCLUSIVE


def polynomial_continuity_check(s: SequencePrefix, a, P) -> bool:
    """Images under a nonconstant polynomial pseudoconverge to P(a).

    A shift of the tail index is allowed, matching the theorem's
    "eventually": the check succeeds if some residual tail of at least
    three terms has strictly increasing v(P(a_i) - P(a)).
    """
    if P.degree is None or P.degree < 1:
        raise ValueError("the polynomial must be nonconstant")
    if not is_pseudolimit_prefix(s, a):
        raise ValueError("the prefix does not pseudoconverge to a on the window")
    target = P.evaluate(a)
    diffs = [_v(P.evaluate(x) - target) for x in s.values[s.tail_index + 1 :]]
    for start in range(len(diffs) - 2):
        tail = diffs[start:]
        if all(tail[i] < tail[i + 1] for i in range(len(tail) - 1)):
            return True
    return False
