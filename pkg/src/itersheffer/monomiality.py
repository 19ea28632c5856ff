"""Raising and lowering operators in ``d/dx`` and monomiality checks.

Operators are kept in the normal form ``x * A(D) + B(D)`` where ``A`` and
``B`` are power series in ``D = d/dx``.  They presuppose the exponential
reference sequence ``c_n = n!``, for which the series variable ``t``
acts on polynomials as ``D``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .iterated import IteratedSpec, composed_pair, gf_2isp
from .polynomial import Polynomial
from .powerseries import FormalPowerSeries, compose, mul_inverse
from .sheffer import CheckReport, ShefferPair, sequence_from_gf


def apply_series(h: FormalPowerSeries, p: Polynomial) -> Polynomial:
    """``h(D) p = sum_k h_k p^(k)``; derivatives past ``deg p`` vanish."""
    if p.is_zero():
        return Polynomial()
    if h.order < p.degree:
        raise ValueError("D-series known to order %d, polynomial has degree %d"
                         % (h.order, p.degree))
    out = Polynomial()
    deriv = p
    for k in range(p.degree + 1):
        if h.coeffs[k]:
            out = out + deriv * h.coeffs[k]
        deriv = deriv.derivative()
    return out


@dataclass(frozen=True, eq=False)
class DiffOperator:
    """``p -> x * (a_part(D) p) + b_part(D) p``."""

    a_part: FormalPowerSeries
    b_part: FormalPowerSeries

    def apply(self, p: Polynomial) -> Polynomial:
        return Polynomial.x() * apply_series(self.a_part, p) + apply_series(self.b_part, p)

    def __call__(self, p: Polynomial) -> Polynomial:
        return self.apply(p)

    @property
    def order(self) -> int:
        return min(self.a_part.order, self.b_part.order)


def apply(op, p: Polynomial) -> Polynomial:
    """Apply a :class:`DiffOperator` or a bare ``D``-series."""
    if isinstance(op, DiffOperator):
        return op.apply(p)
    return apply_series(op, p)


def _require_exponential(c):
    if c.kind != "exponential":
        raise ValueError("D-operators need the exponential reference sequence, got %s" % c.label)


def raising_sheffer(pair: ShefferPair) -> DiffOperator:
    """``(x - g'(D)/g(D)) / f'(D)`` in normal form."""
    _require_exponential(pair.c)
    f1 = pair.f.derivative()
    a = mul_inverse(f1)
    g = pair.g.truncate(a.order)
    b = -(pair.g.derivative() * mul_inverse(g)) * a
    return DiffOperator(a, b)


def lowering_sheffer(pair: ShefferPair) -> FormalPowerSeries:
    _require_exponential(pair.c)
    return pair.f


def raising_2isp(spec: IteratedSpec) -> DiffOperator:
    """Raising operator of the composed pair for ``spec.order``.

    For ``gf21`` this is
    ``(x - g2'(D)/g2(D) - g1'(f2(D))/g1(f2(D)) f2'(D)) / (f1'(f2(D)) f2'(D))``.
    """
    return raising_sheffer(composed_pair(spec.pair1, spec.pair2, spec.order))


def raising_2isp_displayed(spec: IteratedSpec) -> DiffOperator:
    """The variant with ``f1'(f2(D))`` in place of ``f2'(D)`` in the ``g1`` term.

    It equals :func:`raising_2isp` (``gf21``) whenever ``g1`` is constant
    or ``f1' (f2) = f2'``; kept so reports can show where they part.
    """
    _require_exponential(spec.c)
    g1, f1 = spec.pair1.g, spec.pair1.f
    g2, f2 = spec.pair2.g, spec.pair2.f
    f1p_f2 = compose(f1.derivative(), f2)
    f2p = f2.derivative()
    a = mul_inverse(f1p_f2 * f2p)
    n = a.order
    g1_f2 = compose(g1, f2).truncate(n)
    g1p_f2 = compose(g1.derivative(), f2)
    b = -(g1p_f2 * mul_inverse(g1_f2) * f1p_f2 + g2.derivative() * mul_inverse(g2.truncate(n))) * a
    return DiffOperator(a, b)


def lowering_2isp(spec: IteratedSpec) -> FormalPowerSeries:
    """``f1(f2(D))`` for ``gf21``; ``f2(f1(D))`` for ``theorem22``."""
    _require_exponential(spec.c)
    return composed_pair(spec.pair1, spec.pair2, spec.order).f


def _target_parts(target, N):
    if isinstance(target, IteratedSpec):
        _require_exponential(target.c)
        return raising_2isp(target), lowering_2isp(target), gf_2isp(target, N + 1)
    _require_exponential(target.c)
    return raising_sheffer(target), lowering_sheffer(target), sequence_from_gf(target, N + 1)


def verify_monomiality(target, N: int, sequence=None) -> CheckReport:
    """``M s_n = s_(n+1)`` for ``n < N`` and ``P s_n = n s_(n-1)`` for ``1 <= n <= N``.

    ``target`` is a :class:`ShefferPair` or an :class:`IteratedSpec`; its
    series must be known to order ``N + 1``.  ``sequence`` overrides the
    polynomials under test (used for negative controls).  Violations are
    located by the index pair the failing law connects.
    """
    M, P, seq = _target_parts(target, N)
    if sequence is not None:
        seq = sequence
    report = CheckReport("monomiality")
    for n in range(N + 1):
        if n < N:
            report.checked += 1
            if M.apply(seq[n]) != seq[n + 1]:
                report.fail((n, n + 1), "M s_%d != s_%d" % (n, n + 1))
        if n >= 1:
            report.checked += 1
            if apply_series(P, seq[n]) != seq[n - 1] * n:
                report.fail((n, n - 1), "P s_%d != %d s_%d" % (n, n, n - 1))
    return report


def diffeq_residual(target, n: int, sequence=None) -> Polynomial:
    """``(M P - n) s_n``; the zero polynomial when the sequence is quasi-monomial."""
    M, P, seq = _target_parts(target, n)
    if sequence is not None:
        seq = sequence
    s = seq[n]
    return M.apply(apply_series(P, s)) - s * n


def commutator_check(target, N: int) -> CheckReport:
    """``(P M - M P) s_n = s_n`` for ``n <= N``."""
    M, P, seq = _target_parts(target, N + 1)
    report = CheckReport("commutator")
    for n in range(N + 1):
        s = seq[n]
        value = apply_series(P, M.apply(s)) - M.apply(apply_series(P, s))
        report.checked += 1
        if value != s:
            report.fail((n,), "[P, M] s_%d != s_%d" % (n, n))
    return report


def compare_series(a: FormalPowerSeries, b: FormalPowerSeries) -> list[tuple[int, Fraction, Fraction]]:
    """Coefficient positions where two ``D``-series differ (up to the common order)."""
    n = min(a.order, b.order)
    return [(k, a.coeffs[k], b.coeffs[k]) for k in range(n + 1) if a.coeffs[k] != b.coeffs[k]]


def compare_operators(op1: DiffOperator, op2: DiffOperator) -> dict:
    return {"a_part": compare_series(op1.a_part, op2.a_part),
            "b_part": compare_series(op1.b_part, op2.b_part)}
