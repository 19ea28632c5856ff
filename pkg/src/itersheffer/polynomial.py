"""Dense univariate polynomials in ``x`` over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .powerseries import as_rational


class Polynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, k: int, coeff=1) -> "Polynomial":
        return cls([0] * k + [coeff])

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        if k < 0:
            raise IndexError(k)
        return self.coeffs[k] if k < len(self.coeffs) else Fraction(0)

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Polynomial([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                           for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial([c * other for c in self.coeffs])
        if not isinstance(other, Polynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Polynomial.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def derivative(self) -> "Polynomial":
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Evaluate at a rational point, or compose with another polynomial."""
        if isinstance(x, Polynomial):
            result = Polynomial()
            for c in reversed(self.coeffs):
                result = result * x + c
            return result
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return "Polynomial([%s])" % ", ".join(str(c) for c in self.coeffs)

    def __str__(self):
        return format_polynomial(self)

    def to_strings(self) -> list[str]:
        """Exact ascending coefficients as ``"p/q"`` strings (JSON payload)."""
        return [str(c) for c in self.coeffs] or ["0"]

    @classmethod
    def from_strings(cls, items: Iterable[str]) -> "Polynomial":
        return cls(Fraction(s) for s in items)


def _monomial_text(k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return "x"
    return "x^%d" % k


def format_polynomial(p: Polynomial) -> str:
    """Human form, highest degree first: ``x^4 + 6x^3 + 7x^2 + x``.

    Integer coefficients are written against the power of x (``6x^3``);
    fractional ones are separated by a space (``1/4 x^2``).
    """
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        negative = c < 0
        mag = -c if negative else c
        mono = _monomial_text(k)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        elif mag.denominator == 1:
            body = "%s%s" % (mag, mono)
        else:
            body = "%s %s" % (mag, mono)
        if not parts:
            parts.append("-" + body if negative else body)
        else:
            parts.append(("- " if negative else "+ ") + body)
    return " ".join(parts)


def umbral_substitute(p: Polynomial, basis) -> Polynomial:
    """Replace every ``x^k`` in ``p`` by ``basis[k]``."""
    if p.degree >= len(basis):
        raise ValueError("basis too short for a degree-%d polynomial" % p.degree)
    result = Polynomial()
    for k, c in enumerate(p.coeffs):
        if c:
            result = result + basis[k] * c
    return result
