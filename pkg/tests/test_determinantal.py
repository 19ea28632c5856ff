import random
from fractions import Fraction

import pytest

from itersheffer import determinantal as D
from itersheffer import riordan
from itersheffer.errors import DimensionMismatch, ZeroDiagonal
from itersheffer.polynomial import Polynomial
from itersheffer.powerseries import EXPONENTIAL, FormalPowerSeries as FPS, exp_series, log_series, t
from itersheffer.sheffer import ShefferPair, sequence_from_gf

import oracles


def cofactor_det(M):
    """Full recursive Laplace expansion; entries may be numbers or Polynomials."""
    n = len(M)
    if n == 1:
        return M[0][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * cofactor_det(minor) if (j % 2 == 0) else M[0][j] * (-cofactor_det(minor))
        total = term if total is None else total + term
    return total


def test_bareiss_matches_cofactor_random():
    rng = random.Random(1)
    for size in range(1, 6):
        for _ in range(5):
            M = [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(size)] for _ in range(size)]
            assert D.bareiss_det(M) == cofactor_det(M)


def test_bareiss_zero_pivot_and_singular():
    assert D.bareiss_det([[0, 1], [1, 0]]) == -1
    assert D.bareiss_det([[1, 2], [2, 4]]) == 0
    assert D.bareiss_det([]) == 1


def test_det_exact_small():
    x = Polynomial.x()
    assert D.det_exact(D.BorderedMatrix.of([x], [])) == x
    a00, a10 = Fraction(3), Fraction(5)
    M = D.BorderedMatrix.of([1, x], [[a00, a10]])
    assert D.det_exact(M) == Polynomial.constant(a10) - x * a00


def test_det_exact_random_bordered_matches_cofactor():
    rng = random.Random(2)
    n = 5
    top = [Polynomial([rng.randint(-3, 3) for _ in range(k + 1)]) for k in range(n)]
    block = [[Fraction(0) if c < r else Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for c in range(n)]
             for r in range(n - 1)]
    M = D.BorderedMatrix.of(top, block)
    full = [list(M.top_row)] + [[Polynomial.constant(v) for v in row] for row in M.block]
    assert D.det_exact(M) == cofactor_det(full)


def test_bordered_shape_errors():
    with pytest.raises(DimensionMismatch):
        D.BorderedMatrix.of([1, 2], [])
    with pytest.raises(DimensionMismatch):
        D.BorderedMatrix.of([1, 2], [[1]])
    with pytest.raises(ValueError):
        D.BorderedMatrix.of([1, 2, 3], [[1, 1, 1], [1, 1, 1]])


def _array(g, f, N):
    return riordan.build(g, f, EXPONENTIAL, N)


def test_sheffer_det_examples():
    N = 6
    A = _array(FPS.constant(1, N), log_series(1 + t(N)), N)
    assert D.sheffer_det(A, 0) == Polynomial.constant(1 / A[0, 0])
    assert D.sheffer_det(A, 2) == Polynomial([0, 1, 1])
    T = t(N)
    from itersheffer.powerseries import mul_inverse, pow_series
    pair = ShefferPair(pow_series(1 - T, -4), T * mul_inverse(T - 1))
    L = _array(pair.g, pair.f, N)
    seq = sequence_from_gf(pair, N)
    assert [D.sheffer_det(L, n) for n in range(N + 1)] == seq.polys


def test_sheffer_det_nonunit_diagonal():
    N = 5
    pair = ShefferPair(FPS([2, 1, 3], N), FPS([0, 3, 1, -1], N))
    A = _array(pair.g, pair.f, N)
    seq = sequence_from_gf(pair, N)
    for n in range(N + 1):
        s = D.sheffer_det(A, n)
        assert s == seq[n]
        assert s.degree == n and s.leading() == 1 / A[n, n]


def test_associated_det_falling_factorial_sign():
    N = 6
    A = _array(FPS.constant(1, N), exp_series(t(N)) - 1, N)
    for n in range(N + 1):
        assert D.associated_det(A, n) == Polynomial(oracles.falling(n))
    assert D.associated_det(A, 2) == Polynomial([0, -1, 1])
    # the alternative sign convention gives the negative for n = 2
    assert D.displayed_associated_prefactor(A, 2) == -D.associated_prefactor(A, 2)


def test_iterated_dets_table_values():
    N = 6
    one = FPS.constant(1, N)
    ep = ShefferPair(one, log_series(1 + t(N)))
    A = _array(ep.g, ep.f, N)
    inner = sequence_from_gf(ep, N)
    assert D.iterated_det(A, inner, 0) == Polynomial.constant(1 / A[0, 0])
    assert D.iterated_det(A, inner, 2) == Polynomial([0, 2, 1])
    assert D.iterated_associated_det(A, inner, 4) == Polynomial([0, 15, 32, 12, 1])
    ff = ShefferPair(one, exp_series(t(N)) - 1)
    B = _array(ff.g, ff.f, N)
    inner = sequence_from_gf(ff, N)
    assert D.iterated_det(B, inner, 3) == Polynomial([0, 7, -6, 1])
    assert D.iterated_associated_det(B, inner, 2) == Polynomial([0, -2, 1])


def test_cramer_equals_forward_substitution():
    N = 6
    pair = ShefferPair(FPS([3, -1, 2], N), FPS([0, 2, 1, 0, 5], N))
    inner = sequence_from_gf(ShefferPair(FPS([1, 1], N), FPS([0, 1, 1], N)), N)
    A = _array(pair.g, pair.f, N)
    fwd = D.forward_substitution(A, inner, N)
    assert [D.iterated_det(A, inner, n) for n in range(N + 1)] == fwd


def test_errors():
    N = 3
    A = _array(FPS.constant(1, N), t(N), N)
    with pytest.raises(DimensionMismatch):
        D.sheffer_det(A, 4)
    with pytest.raises(ValueError):
        D.associated_det(_array(FPS([1, 1], N), t(N), N), 2)
    bad = riordan.RiordanArray(A.g, A.f, A.c, 1, ((Fraction(1),), (Fraction(0), Fraction(0))))
    with pytest.raises(ZeroDiagonal):
        D.sheffer_det(bad, 1)
