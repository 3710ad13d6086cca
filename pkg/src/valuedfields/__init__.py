"""Desk-scale exact arithmetic for valued fields.

p-adic numbers and formal Laurent series with honest precision tracking,
Hensel lifting, homogeneous-form solubility over finite fields and Q_p,
truncated Hahn series over ordered exponent groups, pseudo-convergence
prefix checkers, and a brute-force first-order evaluator over the finite
local rings Z/p^nZ and F_p[t]/(t^n).
"""

__version__ = "0.1.0"

from .errors import (
    ArityMismatch,
    BecameZero,
    DivisionByZero,
    DomainTooLarge,
    GroupMismatch,
    HypothesisFailed,
    NotAnNthPower,
    NotASimpleRoot,
    NotPrime,
    ParseError,
    PrecisionLoss,
    PrimeMismatch,
    ResidueObstruction,
    RingMismatch,
    SingularResidueZero,
    ToolkitError,
    TooWide,
    ValuationNotDivisible,
)
from .fields import GF, QQ, ZZ, IntegerRing, PrimeField, RationalField, is_prime
from .valuation import (
    DEFAULT_PRECISION,
    INFINITY,
    LaurentSeries,
    PadicNumber,
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
from .poly import (
    Form,
    MultiPoly,
    UniPoly,
    form_evaluate,
    parse_form,
    parse_polynomial,
    parse_unipoly,
    poly_eval_and_derivative,
    restrict_last_variable,
    taylor_coefficients,
)
from .hensel import (
    LiftResult,
    is_nth_power,
    is_square,
    nth_root_one_plus,
    nth_root_with_valuation,
    simple_zero_lift,
    strong_zero_lift,
    zp_membership_via_definability,
)
from .forms import (
    ChevalleyWarningReport,
    PadicZeroCertificate,
    TerjanianReport,
    Unresolved,
    ZeroCount,
    certify_vector,
    chevalley_warning_check,
    count_zeros_ff,
    lift_residue_zero,
    padic_zero_search,
    terjanian_certificate,
    terjanian_form,
    terjanian_g,
)
from .hahn import (
    LEX_EXP,
    Q_EXP,
    Z_EXP,
    HahnSeries,
    hahn_arith,
    hahn_invert,
    hahn_valuation_residue_ac,
    parse_hahn,
)
from .pseudoconv import (
    SequencePrefix,
    alpha_law_holds,
    alpha_sequence,
    is_pc_prefix,
    is_pseudolimit_prefix,
    polynomial_continuity_check,
    valuation_pattern,
)
from .local_rings import (
    AkeReport,
    FiniteLocalRing,
    Formula,
    RingElement,
    ake_compare,
    digit_compose,
    digit_decompose,
    evaluate,
    parse_sentence,
    primes_up_to,
    quantifier_depth,
    residue_char_probe,
    ring_arith,
)
