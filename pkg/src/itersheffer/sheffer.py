"""Sheffer pairs, their polynomial sequences, and the umbral pairing.

For a pair ``(g, f)`` and reference sequence ``c`` the Sheffer sequence is
read off ``1/g(fbar(t)) * eps_c(x fbar(t)) = sum s_n(x) t^n / c_n`` with
``eps_c(u) = sum u^n / c_n``.  For ``c_n = n!`` this is the usual
exponential generating function.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import riordan
from .errors import NotDelta, NotInvertible
from .polynomial import Polynomial
from .powerseries import (
    EXPONENTIAL,
    FormalPowerSeries,
    ReferenceSequence,
    comp_inverse,
    compose,
    mul_inverse,
)


@dataclass(frozen=True, eq=False)
class ShefferPair:
    g: FormalPowerSeries
    f: FormalPowerSeries
    c: ReferenceSequence = EXPONENTIAL

    def __post_init__(self):
        if not self.g.is_invertible():
            raise NotInvertible("g(0) must be nonzero")
        if not self.f.is_delta():
            raise NotDelta("f must satisfy f(0) = 0 and f'(0) != 0")

    @property
    def order(self) -> int:
        return min(self.g.order, self.f.order)

    def with_reference(self, c: ReferenceSequence) -> "ShefferPair":
        return ShefferPair(self.g, self.f, c)

    def truncate(self, N: int) -> "ShefferPair":
        return ShefferPair(self.g.truncate(N), self.f.truncate(N), self.c)

    def coefficient_series(self):
        """``(1/g(fbar), fbar)``, the pair whose array holds the coefficients."""
        fbar = comp_inverse(self.f)
        return mul_inverse(compose(self.g, fbar)), fbar


@dataclass(eq=False)
class PolynomialSequence:
    polys: list
    pair: ShefferPair | None = None
    route: str = ""
    notes: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, n):
        return self.polys[n]

    def __iter__(self):
        return iter(self.polys)

    def __eq__(self, other):
        if isinstance(other, PolynomialSequence):
            return self.polys == other.polys
        if isinstance(other, list):
            return self.polys == other
        return NotImplemented

    __hash__ = None

    @property
    def N(self) -> int:
        return len(self.polys) - 1


def _need_order(pair: ShefferPair, N: int):
    if pair.order < N:
        raise ValueError("pair series known to order %d, need %d" % (pair.order, N))


def columns_to_polys(H: FormalPowerSeries, K: FormalPowerSeries,
                     c: ReferenceSequence, N: int) -> list[Polynomial]:
    """Polynomials ``c_n sum_k [t^n](H K^k) / c_k x^k`` for ``n <= N``.

    This is the column expansion of ``H(t) eps_c(x K(t))``.
    """
    cs = c.values(N)
    coeffs = [[Fraction(0)] * (n + 1) for n in range(N + 1)]
    column = H.truncate(N)
    K = K.truncate(N)
    for k in range(N + 1):
        for n in range(k, N + 1):
            coeffs[n][k] = cs[n] * column.coeffs[n] / cs[k]
        if k < N:
            column = column * K
    return [Polynomial(row) for row in coeffs]


def sequence_from_gf(pair: ShefferPair, N: int) -> PolynomialSequence:
    _need_order(pair, N)
    p = pair.truncate(N)
    H, fbar = p.coefficient_series()
    return PolynomialSequence(columns_to_polys(H, fbar, p.c, N), p, "gf")


def sequence_from_array(pair: ShefferPair, N: int) -> PolynomialSequence:
    """Rows of the inverse of ``build(g, f, c)``, inverted numerically.

    Never forms ``fbar``; agreement with :func:`sequence_from_gf` is a
    genuine cross-check.
    """
    _need_order(pair, N)
    A = riordan.build(pair.g, pair.f, pair.c, N)
    B = riordan.triangular_inverse(A.entries)
    return PolynomialSequence([Polynomial(row) for row in B], pair.truncate(N), "array")


def monomial_expansion(pair: ShefferPair, N: int) -> riordan.RiordanArray:
    """Array ``a`` with ``x^n = sum_k a[n][k] s_k(x)``."""
    _need_order(pair, N)
    return riordan.build(pair.g, pair.f, pair.c, N)


def reconstruct_monomials(array: riordan.RiordanArray, seq) -> list[Polynomial]:
    """``sum_k a[n][k] s_k`` for each row; equals ``x^n`` for a matching pair."""
    out = []
    for n in range(array.N + 1):
        acc = Polynomial()
        for k in range(n + 1):
            if array.entries[n][k]:
                acc = acc + seq[k] * array.entries[n][k]
        out.append(acc)
    return out


def functional_pair(h: FormalPowerSeries, p: Polynomial, c: ReferenceSequence) -> Fraction:
    """``<h(t) | p(x)>`` with ``<t^k | x^n> = c_n delta_{n,k}``."""
    if p.degree > h.order:
        raise ValueError("series known to order %d; polynomial has degree %d"
                         % (h.order, p.degree))
    acc = Fraction(0)
    for n, pn in enumerate(p.coeffs):
        if pn and h.coeffs[n]:
            acc += c(n) * h.coeffs[n] * pn
    return acc


def operator_action(h: FormalPowerSeries, p: Polynomial, c: ReferenceSequence) -> Polynomial:
    """``h(t)`` acting on ``p``: ``x^n -> sum_k c_n/c_(n-k) h_k x^(n-k)``."""
    out = [Fraction(0)] * max(len(p.coeffs), 1)
    for n, pn in enumerate(p.coeffs):
        if not pn:
            continue
        for k in range(0, n + 1):
            if k > h.order:
                break
            hk = h.coeffs[k]
            if hk:
                out[n - k] += pn * c(n) / c(n - k) * hk
    return Polynomial(out)


@dataclass
class CheckReport:
    """Outcome of a verification routine.

    ``violations`` lists human-readable failures; ``first`` holds the
    location of the first one (for example ``(n, k)``).
    """

    name: str
    ok: bool = True
    violations: list = field(default_factory=list)
    first: tuple | None = None
    checked: int = 0

    def fail(self, where, message):
        if self.ok:
            self.first = where
        self.ok = False
        self.violations.append(message)

    def as_dict(self):
        return {"check": self.name, "ok": self.ok, "checked": self.checked,
                "first_violation": list(self.first) if self.first else None,
                "violations": self.violations[:20]}


def biorthogonality_check(pair: ShefferPair, N: int, sequence=None) -> CheckReport:
    """Check ``<g f^k | s_n> = c_n delta_{n,k}`` for all ``n, k <= N``."""
    _need_order(pair, N)
    seq = sequence if sequence is not None else sequence_from_gf(pair, N)
    report = CheckReport("biorthogonality")
    g = pair.g.truncate(N)
    f = pair.f.truncate(N)
    column = g
    for k in range(N + 1):
        for n in range(N + 1):
            value = functional_pair(column, seq[n], pair.c)
            expected = pair.c(n) if n == k else Fraction(0)
            report.checked += 1
            if value != expected:
                report.fail((n, k), "<g f^%d | s_%d> = %s, expected %s" % (k, n, value, expected))
        column = column * f
    return report
