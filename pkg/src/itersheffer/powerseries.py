"""Truncated formal power series with exact rational coefficients.

A :class:`FormalPowerSeries` stores the coefficients of ``t^0 .. t^N`` and
stands for the class of the series modulo ``t^(N+1)``.  Binary operations
truncate to the smaller of the two orders, so a result never claims more
precision than its inputs carry.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable

from .errors import DomainViolation, InnerNotDelta, NotDelta, NotInvertible

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and strings such as ``"3/4"`` to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact scalars: %r" % value)
    return Fraction(value)


class ReferenceSequence:
    """The weights ``c_n`` of the generalized umbral framework.

    ``kind`` is ``"classical"`` (c_n = 1), ``"exponential"`` (c_n = n!) or
    ``"custom"``; custom sequences are identified by their ``label``.
    """

    __slots__ = ("kind", "label", "_fn", "_cache")

    def __init__(self, kind: str, label: str, fn: Callable[[int], Fraction]):
        if kind not in ("classical", "exponential", "custom"):
            raise ValueError("unknown reference sequence kind %r" % kind)
        self.kind = kind
        self.label = label
        self._fn = fn
        self._cache: dict[int, Fraction] = {}

    def __call__(self, n: int) -> Fraction:
        value = self._cache.get(n)
        if value is None:
            value = as_rational(self._fn(n))
            if value == 0:
                raise DomainViolation(
                    "reference sequence %s vanishes at n=%d" % (self.label, n))
            self._cache[n] = value
        return value

    def values(self, N: int) -> list[Fraction]:
        return [self(n) for n in range(N + 1)]

    def agrees_with(self, other: "ReferenceSequence", N: int) -> bool:
        if self is other:
            return True
        return all(self(n) == other(n) for n in range(N + 1))

    def __eq__(self, other):
        if not isinstance(other, ReferenceSequence):
            return NotImplemented
        return (self.kind, self.label) == (other.kind, other.label)

    def __hash__(self):
        return hash((self.kind, self.label))

    def __repr__(self):
        return "ReferenceSequence(%s)" % self.label


CLASSICAL = ReferenceSequence("classical", "classical", lambda n: 1)
EXPONENTIAL = ReferenceSequence("exponential", "exponential", math.factorial)


def custom_reference(label: str, fn: Callable[[int], Fraction]) -> ReferenceSequence:
    return ReferenceSequence("custom", label, fn)


def reference_from_name(name: str) -> ReferenceSequence:
    if name == "classical":
        return CLASSICAL
    if name == "exponential":
        return EXPONENTIAL
    raise ValueError("unknown reference sequence %r" % name)


class FormalPowerSeries:
    """Series ``sum coeffs[n] t^n`` known modulo ``t^(order+1)``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [as_rational(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        if len(cs) < order + 1:
            cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        self.coeffs = tuple(cs[:order + 1])

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, value, order: int) -> "FormalPowerSeries":
        return cls([value], order)

    @classmethod
    def variable(cls, order: int) -> "FormalPowerSeries":
        """The series ``t``."""
        return cls([0, 1], order) if order >= 1 else cls([0], order)

    @classmethod
    def monomial(cls, k: int, order: int, coeff=1) -> "FormalPowerSeries":
        cs = [0] * (order + 1)
        if k <= order:
            cs[k] = coeff
        return cls(cs, order)

    @classmethod
    def from_function(cls, fn: Callable[[int], object], order: int) -> "FormalPowerSeries":
        return cls([fn(n) for n in range(order + 1)], order)

    # -- basic accessors ----------------------------------------------
    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            raise IndexError("negative coefficient index")
        if n > self.order:
            raise IndexError("coefficient t^%d beyond truncation order %d" % (n, self.order))
        return self.coeffs[n]

    def coefficient(self, n: int) -> Fraction:
        return self[n]

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, None for the zero class."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def truncate(self, order: int) -> "FormalPowerSeries":
        if order > self.order:
            raise ValueError("cannot raise truncation order from %d to %d" % (self.order, order))
        return FormalPowerSeries(self.coeffs[:order + 1], order)

    def shift_down(self, m: int) -> "FormalPowerSeries":
        """Divide by ``t^m``; the first ``m`` coefficients must vanish."""
        if m == 0:
            return self
        if any(self.coeffs[:m]):
            raise DomainViolation("cannot divide by t^%d: low coefficients do not vanish" % m)
        if m > self.order:
            raise DomainViolation("dividing by t^%d leaves no known coefficients" % m)
        return FormalPowerSeries(self.coeffs[m:], self.order - m)

    def is_invertible(self) -> bool:
        return self.coeffs[0] != 0

    def is_delta(self) -> bool:
        return self.order >= 1 and self.coeffs[0] == 0 and self.coeffs[1] != 0

    # -- ring operations ----------------------------------------------
    def _coerce(self, other) -> "FormalPowerSeries | None":
        if isinstance(other, FormalPowerSeries):
            return other
        if isinstance(other, (int, Fraction, str)):
            return FormalPowerSeries.constant(other, self.order)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = min(self.order, other.order)
        return FormalPowerSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self):
        return FormalPowerSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, r) -> "FormalPowerSeries":
        r = as_rational(r)
        return FormalPowerSeries([r * c for c in self.coeffs], self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, FormalPowerSeries):
            return NotImplemented
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            ai = a[i]
            if not ai:
                continue
            for j in range(n + 1 - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return FormalPowerSeries(out, n)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("series divided by zero scalar")
            return self.scale(Fraction(1) / as_rational(other))
        if not isinstance(other, FormalPowerSeries):
            return NotImplemented
        return self * mul_inverse(other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * mul_inverse(self)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return mul_inverse(self) ** (-k)
        result = FormalPowerSeries.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __call__(self, inner: "FormalPowerSeries") -> "FormalPowerSeries":
        return compose(self, inner)

    def derivative(self) -> "FormalPowerSeries":
        """Formal derivative; one order of precision is lost."""
        if self.order == 0:
            return FormalPowerSeries([0], 0)
        return FormalPowerSeries([n * self.coeffs[n] for n in range(1, self.order + 1)],
                                 self.order - 1)

    def integral(self) -> "FormalPowerSeries":
        """Antiderivative with zero constant term; gains one order."""
        return FormalPowerSeries([0] + [c / (n + 1) for n, c in enumerate(self.coeffs)],
                                 self.order + 1)

    # -- comparison / display -----------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FormalPowerSeries.constant(other, self.order)
        if not isinstance(other, FormalPowerSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[:n + 1] == other.coeffs[:n + 1]

    __hash__ = None

    def __repr__(self):
        return "FormalPowerSeries([%s], order=%d)" % (
            ", ".join(str(c) for c in self.coeffs), self.order)

    def __str__(self):
        terms = []
        for n, c in enumerate(self.coeffs):
            if c:
                terms.append("%s*t^%d" % (c, n) if n else str(c))
        body = " + ".join(terms) if terms else "0"
        return "%s + O(t^%d)" % (body, self.order + 1)


def mul_inverse(f: FormalPowerSeries) -> FormalPowerSeries:
    """Multiplicative inverse; requires a nonzero constant term."""
    a = f.coeffs
    if a[0] == 0:
        raise NotInvertible("series has zero constant term; no multiplicative inverse")
    inv0 = 1 / a[0]
    h = [inv0]
    for n in range(1, f.order + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            if a[k]:
                acc += a[k] * h[n - k]
        h.append(-acc * inv0)
    return FormalPowerSeries(h, f.order)


def compose(f: FormalPowerSeries, g: FormalPowerSeries) -> FormalPowerSeries:
    """``f(g(t))`` by Horner's rule; ``g`` must have zero constant term."""
    if g.coeffs[0] != 0:
        raise InnerNotDelta("inner series of a composition must have zero constant term")
    n = min(f.order, g.order)
    g = g.truncate(n)
    result = FormalPowerSeries.constant(f.coeffs[n], n)
    for k in range(n - 1, -1, -1):
        result = result * g
        result = FormalPowerSeries((result.coeffs[0] + f.coeffs[k],) + result.coeffs[1:], n)
    return result


def comp_inverse(f: FormalPowerSeries) -> FormalPowerSeries:
    """Compositional inverse of a delta series.

    The coefficient of ``t^n`` in the inverse ``h`` is fixed by the ``t^n``
    coefficient of ``f(h)``, which involves ``h_n`` only through
    ``f_1 h_n``.  Columns of the power table ``h^k`` are filled in as the
    coefficients become known.
    """
    if not f.is_delta():
        raise NotDelta("compositional inverse needs f(0) = 0 and f'(0) != 0")
    N = f.order
    a = f.coeffs
    inv1 = 1 / a[1]
    h = [Fraction(0)] * (N + 1)
    h[1] = inv1
    # powers[k][m] = [t^m] h^k, filled column by column
    powers = [[Fraction(0)] * (N + 1) for _ in range(N + 1)]
    powers[0][0] = Fraction(1)
    powers[1][1] = inv1
    for k in range(2, N + 1):
        powers[k][k] = inv1 ** k
    for n in range(2, N + 1):
        r = Fraction(0)
        for k in range(2, n + 1):
            if k < n:
                acc = Fraction(0)
                prev = powers[k - 1]
                for i in range(1, n - k + 2):
                    if h[i] and prev[n - i]:
                        acc += h[i] * prev[n - i]
                powers[k][n] = acc
            if a[k]:
                r += a[k] * powers[k][n]
        h[n] = -r * inv1
        powers[1][n] = h[n]
    return FormalPowerSeries(h, N)


def exp_series(f: FormalPowerSeries) -> FormalPowerSeries:
    if f.coeffs[0] != 0:
        raise DomainViolation("exp needs a series with zero constant term")
    a = f.coeffs
    e = [Fraction(1)]
    for n in range(1, f.order + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            if a[k]:
                acc += k * a[k] * e[n - k]
        e.append(acc / n)
    return FormalPowerSeries(e, f.order)


def log_series(f: FormalPowerSeries) -> FormalPowerSeries:
    if f.coeffs[0] != 1:
        raise DomainViolation("log needs a series with constant term 1")
    if f.order == 0:
        return FormalPowerSeries([0], 0)
    return (f.derivative() * mul_inverse(f.truncate(f.order - 1))).integral()


def pow_series(f: FormalPowerSeries, r) -> FormalPowerSeries:
    """``f^r`` for rational ``r`` as ``exp(r log f)``; needs constant term 1."""
    r = as_rational(r)
    if f.coeffs[0] != 1:
        raise DomainViolation("rational power needs a series with constant term 1")
    return exp_series(log_series(f).scale(r))


def sqrt_series(f: FormalPowerSeries) -> FormalPowerSeries:
    return pow_series(f, Fraction(1, 2))


def _odd_even(order, parity, sign_fn):
    cs = []
    for n in range(order + 1):
        if n % 2 == parity:
            cs.append(Fraction(sign_fn(n), math.factorial(n)))
        else:
            cs.append(Fraction(0))
    return FormalPowerSeries(cs, order)


def sin_series(f: FormalPowerSeries) -> FormalPowerSeries:
    if f.coeffs[0] != 0:
        raise DomainViolation("sin needs a series with zero constant term")
    return compose(_odd_even(f.order, 1, lambda n: (-1) ** ((n - 1) // 2)), f)


def cos_series(f: FormalPowerSeries) -> FormalPowerSeries:
    if f.coeffs[0] != 0:
        raise DomainViolation("cos needs a series with zero constant term")
    return compose(_odd_even(f.order, 0, lambda n: (-1) ** (n // 2)), f)


def t(order: int) -> FormalPowerSeries:
    """Shorthand for the series ``t`` at the given order."""
    return FormalPowerSeries.variable(order)


def one(order: int) -> FormalPowerSeries:
    return FormalPowerSeries.constant(1, order)
