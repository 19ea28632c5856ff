"""Generalized Riordan arrays and the Riordan group.

The entry rule is ``a[n][k] = c_n [t^n] g(t) f(t)^k / c_k``.  An array
keeps its generating pair ``(g, f, c)``; the entries are a cache that is
recomputed from that provenance and checked whenever an operation claims a
closed form.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import MixedReferenceSequence, NotDelta, NotInvertible
from .powerseries import (
    FormalPowerSeries,
    ReferenceSequence,
    comp_inverse,
    compose,
    mul_inverse,
)


def _check_pair(g: FormalPowerSeries, f: FormalPowerSeries):
    if not g.is_invertible():
        raise NotInvertible("g must have nonzero constant term")
    if not f.is_delta():
        raise NotDelta("f must satisfy f(0) = 0, f'(0) != 0")


def entry(g: FormalPowerSeries, f: FormalPowerSeries, c: ReferenceSequence,
          n: int, k: int) -> Fraction:
    """Single entry, computed from scratch."""
    _check_pair(g, f)
    if not 0 <= k <= n:
        raise IndexError("need 0 <= k <= n, got n=%d k=%d" % (n, k))
    if n > min(g.order, f.order):
        raise IndexError("row %d beyond series order" % n)
    return c(n) * (g * f ** k)[n] / c(k)


class RiordanArray:
    """Lower-triangular array for rows ``0..N`` with ``(g, f, c)`` provenance."""

    __slots__ = ("g", "f", "c", "N", "entries")

    def __init__(self, g, f, c, N, entries):
        self.g = g
        self.f = f
        self.c = c
        self.N = N
        self.entries = entries

    def __getitem__(self, nk):
        n, k = nk
        if k > n:
            return Fraction(0)
        return self.entries[n][k]

    def rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def matrix(self) -> list[list[Fraction]]:
        """Square (N+1) x (N+1) matrix including the upper zeros."""
        size = self.N + 1
        return [list(r) + [Fraction(0)] * (size - len(r)) for r in self.entries]

    def diagonal(self) -> list[Fraction]:
        return [self.entries[n][n] for n in range(self.N + 1)]

    def same_entries(self, other: "RiordanArray") -> bool:
        return self.N == other.N and self.entries == other.entries

    def __eq__(self, other):
        if not isinstance(other, RiordanArray):
            return NotImplemented
        return self.same_entries(other) and self.c.agrees_with(other.c, self.N)

    __hash__ = None

    def __repr__(self):
        return "RiordanArray(N=%d, c=%s)" % (self.N, self.c.label)


def build(g: FormalPowerSeries, f: FormalPowerSeries, c: ReferenceSequence,
          N: int) -> RiordanArray:
    _check_pair(g, f)
    if min(g.order, f.order) < N:
        raise ValueError("series known only to order %d; %d rows requested"
                         % (min(g.order, f.order), N))
    g = g.truncate(N)
    f = f.truncate(N)
    cs = c.values(N)
    rows = [[] for _ in range(N + 1)]
    column = g
    for k in range(N + 1):
        for n in range(k, N + 1):
            rows[n].append(cs[n] * column.coeffs[n] / cs[k])
        if k < N:
            column = column * f
    entries = tuple(tuple(r) for r in rows)
    return RiordanArray(g, f, c, N, entries)


def identity(c: ReferenceSequence, N: int) -> RiordanArray:
    return build(FormalPowerSeries.constant(1, N), FormalPowerSeries.variable(N), c, N)


def matrix_product(A, B) -> tuple[tuple[Fraction, ...], ...]:
    """Product of two lower-triangular entry tables of equal size."""
    size = len(A)
    rows = []
    for n in range(size):
        row = []
        for k in range(n + 1):
            acc = Fraction(0)
            for j in range(k, n + 1):
                a = A[n][j]
                if a:
                    b = B[j][k]
                    if b:
                        acc += a * b
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


def multiply(A: RiordanArray, B: RiordanArray) -> RiordanArray:
    """Matrix product; the result carries ``(gA*gB(fA), fB(fA))``.

    The product entries are compared with a fresh build from that pair and
    a mismatch raises ``ArithmeticError``.
    """
    if A.N != B.N:
        raise ValueError("arrays have different sizes: %d vs %d" % (A.N, B.N))
    if not A.c.agrees_with(B.c, A.N):
        raise MixedReferenceSequence(
            "cannot multiply arrays over %s and %s" % (A.c.label, B.c.label))
    entries = matrix_product(A.entries, B.entries)
    g = A.g * compose(B.g, A.f)
    f = compose(B.f, A.f)
    closed = build(g, f, A.c, A.N)
    if closed.entries != entries:
        raise ArithmeticError("Riordan product closed form disagrees with matrix product")
    return closed


def inverse(A: RiordanArray) -> RiordanArray:
    """``(1/g(fbar), fbar)`` where ``fbar`` is the compositional inverse of f."""
    fbar = comp_inverse(A.f)
    g = mul_inverse(compose(A.g, fbar))
    return build(g, fbar, A.c, A.N)


def triangular_inverse(entries) -> tuple[tuple[Fraction, ...], ...]:
    """Inverse of a lower-triangular table with nonzero diagonal.

    Plain forward substitution on the numbers; no series are involved.
    """
    size = len(entries)
    inv = [[Fraction(0)] * (n + 1) for n in range(size)]
    for k in range(size):
        inv[k][k] = 1 / entries[k][k]
        for n in range(k + 1, size):
            acc = Fraction(0)
            for j in range(k, n):
                a = entries[n][j]
                if a and inv[j][k]:
                    acc += a * inv[j][k]
            inv[n][k] = -acc / entries[n][n]
    return tuple(tuple(r) for r in inv)


def format_triangle(A: RiordanArray) -> str:
    return "\n".join(" ".join(str(v) for v in row) for row in A.entries)
