"""Determinantal forms of Sheffer, associated and 2-iterated sequences.

Every matrix here has polynomial entries only in its top row and a
numeric, shifted lower-triangular block below.  The determinant is
expanded along the top row and each numeric minor is evaluated by
fraction-free (Bareiss) elimination on an integer-scaled copy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, ZeroDiagonal
from .polynomial import Polynomial
from .riordan import RiordanArray


@dataclass(frozen=True)
class BorderedMatrix:
    top_row: tuple
    block: tuple

    def __post_init__(self):
        width = len(self.top_row)
        if len(self.block) != width - 1:
            raise DimensionMismatch(
                "top row has %d entries but block has %d rows" % (width, len(self.block)))
        for r, row in enumerate(self.block):
            if len(row) != width:
                raise DimensionMismatch("block row %d has %d entries, need %d"
                                        % (r, len(row), width))
            if any(row[c] for c in range(min(r, width))):
                raise ValueError("block row %d must vanish left of column %d" % (r, r))

    @classmethod
    def of(cls, top_row, block):
        top = tuple(p if isinstance(p, Polynomial) else Polynomial.constant(p) for p in top_row)
        return cls(top, tuple(tuple(Fraction(v) for v in row) for row in block))

    @property
    def size(self) -> int:
        return len(self.top_row)


def bareiss_det(matrix) -> Fraction:
    """Exact determinant of a square rational matrix.

    Rows are scaled to integers first so that the elimination runs on
    integers with exact divisions only.
    """
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in matrix):
        raise DimensionMismatch("matrix is not square")
    scale = Fraction(1)
    M = []
    for row in matrix:
        row = [Fraction(v) for v in row]
        den = math.lcm(*(v.denominator for v in row)) if row else 1
        scale *= den
        M.append([int(v * den) for v in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k] != 0:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = pivot
    return Fraction(sign * M[n - 1][n - 1]) / scale


def det_exact(M: BorderedMatrix) -> Polynomial:
    """Laplace expansion along the polynomial top row."""
    n = M.size
    result = Polynomial()
    for j, p in enumerate(M.top_row):
        if p.is_zero():
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in M.block]
        d = bareiss_det(minor)
        if d:
            result = result + p * (d if j % 2 == 0 else -d)
    return result


def _diag_product(array: RiordanArray, start: int, n: int) -> Fraction:
    prod = Fraction(1)
    for k in range(start, n + 1):
        d = array.entries[k][k]
        if d == 0:
            raise ZeroDiagonal("diagonal entry a[%d][%d] vanishes" % (k, k))
        prod *= d
    return prod


def _check_rows(array: RiordanArray, n: int):
    if n > array.N:
        raise DimensionMismatch("row %d requested from an array with %d rows" % (n, array.N + 1))


def bordered_matrix(array: RiordanArray, top_row) -> BorderedMatrix:
    """``top_row`` over the block ``(a[j][i])`` with ``i < n``, ``j <= n``."""
    n = len(top_row) - 1
    block = [[array[j, i] for j in range(n + 1)] for i in range(n)]
    return BorderedMatrix.of(top_row, block)


def associated_matrix(array: RiordanArray, top_row) -> BorderedMatrix:
    """``top_row`` (entries 1..n) over the block ``(a[j][i])``, ``1 <= i < n``, ``1 <= j <= n``."""
    n = len(top_row)
    block = [[array[j, i] for j in range(1, n + 1)] for i in range(1, n)]
    return BorderedMatrix.of(top_row, block)


def iterated_det(array: RiordanArray, inner, n: int) -> Polynomial:
    """Solve ``sum_k a[m][k] y_k = inner_m`` for ``y_n`` by Cramer's rule.

    The determinant is written in the bordered form with the inner
    polynomials on top and prefactor ``(-1)^n / (a00 ... ann)``.
    """
    _check_rows(array, n)
    prefactor = Fraction((-1) ** n) / _diag_product(array, 0, n)
    if n == 0:
        return inner[0] * prefactor
    M = bordered_matrix(array, [inner[k] for k in range(n + 1)])
    return det_exact(M) * prefactor


def sheffer_det(array: RiordanArray, n: int) -> Polynomial:
    """``s_n`` from the array ``build(g, f, c)`` of its own pair."""
    return iterated_det(array, [Polynomial.monomial(k) for k in range(n + 1)], n)


def _check_associated(array: RiordanArray, n: int):
    for m in range(n + 1):
        expected = 1 if m == 0 else 0
        if array.entries[m][0] != expected:
            raise ValueError("array column 0 is not delta_{n,0}; not an associated array")


def associated_prefactor(array: RiordanArray, n: int) -> Fraction:
    """``(-1)^(n-1) / (a11 ... ann)``, the sign produced by Cramer's rule."""
    return Fraction((-1) ** (n - 1)) / _diag_product(array, 1, n)


def displayed_associated_prefactor(array: RiordanArray, n: int) -> Fraction:
    """The alternative prefactor ``(-1)^n / (a00 a11 ... ann)``.

    Kept for the consistency report: it differs from
    :func:`associated_prefactor` by a sign for every ``n >= 1``.
    """
    return Fraction((-1) ** n) / _diag_product(array, 0, n)


def iterated_associated_det(array: RiordanArray, inner, n: int) -> Polynomial:
    """Associated case: row and column 0 drop out (``a[m][0] = delta``)."""
    _check_rows(array, n)
    _check_associated(array, n)
    if n == 0:
        return inner[0] * (1 / array.entries[0][0])
    M = associated_matrix(array, [inner[k] for k in range(1, n + 1)])
    return det_exact(M) * associated_prefactor(array, n)


def associated_det(array: RiordanArray, n: int) -> Polynomial:
    return iterated_associated_det(array, [Polynomial.monomial(k) for k in range(n + 1)], n)


def forward_substitution(array: RiordanArray, rhs, n: int) -> list[Polynomial]:
    """Solve the lower-triangular system ``sum_k a[m][k] y_k = rhs_m`` for ``m <= n``."""
    _check_rows(array, n)
    ys = []
    for m in range(n + 1):
        d = array.entries[m][m]
        if d == 0:
            raise ZeroDiagonal("diagonal entry a[%d][%d] vanishes" % (m, m))
        acc = rhs[m]
        for k in range(m):
            if array.entries[m][k]:
                acc = acc - ys[k] * array.entries[m][k]
        ys.append(acc * (1 / d))
    return ys
