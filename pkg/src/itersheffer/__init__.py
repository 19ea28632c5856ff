"""Exact Sheffer sequences, Riordan arrays and 2-iterated Sheffer polynomials."""

from .errors import (
    DimensionMismatch,
    DomainViolation,
    ExpressionSyntaxError,
    IndexOutOfRange,
    InnerNotDelta,
    InvalidParameter,
    MixedReferenceSequence,
    NotDelta,
    NotInvertible,
    ShapeMismatch,
    ShefferError,
    UnboundParameter,
    ZeroDiagonal,
)
from .families import (
    FAMILY_NAMES,
    FamilyDescriptor,
    catalog,
    gegenbauer_2ipogc,
    gegenbauer_case,
    iterate_family,
    stirling_first,
    stirling_second,
)
from .iterated import IteratedSpec, composed_pair, consistency_report, gf_2iasp, gf_2isp
from .polynomial import Polynomial, format_polynomial
from .powerseries import (
    CLASSICAL,
    EXPONENTIAL,
    FormalPowerSeries,
    ReferenceSequence,
    comp_inverse,
    compose,
    custom_reference,
    exp_series,
    log_series,
    mul_inverse,
    pow_series,
    sqrt_series,
)
from .riordan import RiordanArray, build, identity, inverse, multiply
from .sheffer import (
    PolynomialSequence,
    ShefferPair,
    biorthogonality_check,
    monomial_expansion,
    sequence_from_array,
    sequence_from_gf,
)
from .specparse import evaluate, parse

__version__ = "0.1.0"
