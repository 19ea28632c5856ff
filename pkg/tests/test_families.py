import math
from fractions import Fraction

import pytest

from itersheffer import families, iterated, riordan
from itersheffer import monomiality as M
from itersheffer.determinantal import sheffer_det
from itersheffer.errors import IndexOutOfRange, InvalidParameter
from itersheffer.polynomial import Polynomial
from itersheffer.powerseries import EXPONENTIAL, log_series, mul_inverse, pow_series, exp_series, t
from itersheffer.sheffer import biorthogonality_check, sequence_from_array, sequence_from_gf

import oracles

N6 = 6


def fact(n):
    return math.factorial(n)


def exp_gf_polys(A, H, N, ordinary=False):
    polys = oracles.gf_exp_type(A, H, N)
    if ordinary:
        return [Polynomial(p) for p in polys]
    return [Polynomial(p) * fact(n) for n, p in enumerate(polys)]


def test_catalog_examples():
    d = families.catalog("laguerre", {"alpha": 3}, 10)
    assert d.g == pow_series(1 - t(10), -4)
    assert d.f == t(10) * mul_inverse(t(10) - 1)
    assert d.c == EXPONENTIAL
    d = families.catalog("falling-factorial", {"a": 1}, 10)
    assert d.g == 1 + 0 * t(10) and d.f == exp_series(t(10)) - 1
    d = families.catalog("exponential", None, 10)
    assert d.f == log_series(1 + t(10))


def test_names_accept_underscores():
    assert families.catalog("jacobi_case", None, 4).name == "jacobi-case"


@pytest.mark.parametrize("name,params", [
    ("falling-factorial", {"a": 0}),
    ("poisson-charlier", {"a": 0}),
    ("gegenbauer-case", {"lambda": 0}),
    ("gegenbauer-case", {"lambda": -2}),
    ("peters", {"mu": Fraction(1, 2)}),
    ("generalized-hermite", {"m": 0}),
    ("generalized-hermite", {"nu": 0}),
    ("laguerre", {"beta": 1}),
    ("nonexistent", {}),
])
def test_invalid_parameters(name, params):
    with pytest.raises(InvalidParameter):
        families.catalog(name, params, 6)


def test_gegenbauer_negative_lambda_beyond_order_is_allowed():
    # C(2, n) vanishes only for n > 2, so order 2 is fine
    families.catalog("gegenbauer-case", {"lambda": -2}, 2)


def test_stirling_values():
    assert families.stirling_second(4, 2) == 7
    assert families.stirling_first(4, 2) == 11
    for n in range(10):
        assert families.stirling_second(n, n) == 1
    with pytest.raises(IndexOutOfRange):
        families.stirling_second(2, 3)
    with pytest.raises(IndexOutOfRange):
        families.stirling_first(-1, 0)


def test_stirling_sum_equals_recurrences_and_inverse():
    S2 = oracles.stirling2_table(12)
    S1 = oracles.stirling1_table(12)
    for n in range(13):
        for k in range(n + 1):
            assert families.stirling_second(n, k) == S2[n][k] == families.stirling_second_recurrence(12)[n][k]
            assert families.stirling_first(n, k) == S1[n][k]
    for n in range(13):
        for m in range(n + 1):
            total = sum(families.stirling_first(n, k) * families.stirling_second(k, m) for k in range(m, n + 1))
            assert total == (1 if n == m else 0)


@pytest.mark.parametrize("name", families.FAMILY_NAMES)
def test_every_family_routes_and_biorthogonality(name):
    d = families.catalog(name, None, 9)
    pair = d.pair
    gf = sequence_from_gf(pair, N6)
    assert gf == sequence_from_array(pair, N6)
    A = riordan.build(pair.g, pair.f, pair.c, N6)
    assert [sheffer_det(A, n) for n in range(N6 + 1)] == gf.polys
    assert all(gf[n].degree == n for n in range(N6 + 1))
    assert biorthogonality_check(pair.truncate(8), 8).ok
    mono = pair if pair.c.kind == "exponential" else d.with_reference(EXPONENTIAL).pair
    assert M.verify_monomiality(mono, N6).ok
    assert all(M.diffeq_residual(mono, n).is_zero() for n in range(N6 + 1))


def test_textbook_hermite_and_generalized():
    d = families.catalog("hermite", None, 8)
    assert d.textbook(6) == [Polynomial(oracles.hermite(n)) for n in range(7)]
    gh = families.catalog("generalized-hermite", {"m": 2, "nu": 2}, 8)
    assert gh.textbook(6) == d.textbook(6)
    m, nu = 3, Fraction(5, 2)
    gh = families.catalog("generalized-hermite", {"m": m, "nu": nu}, 8)
    A = [Fraction(0)] * 9
    for j in range(0, 9, m):
        A[j] = Fraction((-1) ** (j // m), fact(j // m))
    H = [0, nu] + [0] * 7
    assert gh.textbook(6) == exp_gf_polys(A, H, 6)


@pytest.mark.parametrize("alpha", [0, 3, Fraction(1, 2)])
def test_textbook_laguerre(alpha):
    d = families.catalog("laguerre", {"alpha": alpha}, 8)
    assert d.textbook(6) == [Polynomial(oracles.laguerre(n, alpha)) for n in range(7)]


def test_textbook_catalog_rows():
    N = 6
    checks = {
        "pidduck": ({}, oracles.reciprocal([1, -1] + [0] * N, N),
                    [Fraction(0)] + [Fraction(2, k) if k % 2 else Fraction(0) for k in range(1, N + 1)]),
        "actuarial": ({"beta": 3}, oracles.exp_coeffs(3, N),
                      [Fraction(0)] + [-Fraction(1, fact(k)) for k in range(1, N + 1)]),
        "poisson-charlier": ({"a": 2}, oracles.exp_coeffs(-1, N), oracles.log1p_coeffs(N, Fraction(1, 2))),
        "peters": ({"lambda": 1, "mu": 2}, [Fraction(1, 4) * oracles.binom(-2, n) / 2 ** n for n in range(N + 1)],
                   oracles.log1p_coeffs(N)),
        "bernoulli-second-kind": ({}, oracles.reciprocal(oracles.log1p_coeffs(N + 1)[1:], N),
                                  oracles.log1p_coeffs(N)),
        "related": ({}, [oracles.binom(-1, n) / 2 ** n for n in range(N + 1)], oracles.log1p_coeffs(N)),
        "hahn": ({}, [oracles.binom(Fraction(-1, 2), n // 2) if n % 2 == 0 else Fraction(0) for n in range(N + 1)],
                 [Fraction((-1) ** ((k - 1) // 2), k) if k % 2 else Fraction(0) for k in range(N + 1)]),
        "falling-factorial": ({"a": 1}, [Fraction(1)] + [Fraction(0)] * N, oracles.log1p_coeffs(N)),
        "exponential": ({}, [Fraction(1)] + [Fraction(0)] * N,
                        [Fraction(0)] + [Fraction(1, fact(k)) for k in range(1, N + 1)]),
    }
    for name, (params, A, H) in checks.items():
        d = families.catalog(name, params, N + 2)
        assert d.textbook(N) == exp_gf_polys(A, H, N), name


def test_textbook_shively_a1():
    N = 6
    A = [Fraction(math.comb(2 * n, n)) for n in range(N + 1)]
    H = [Fraction(0)] + [-oracles.catalan(n) for n in range(1, N + 1)]
    d = families.catalog("shively", {"a": 1}, N + 2)
    assert d.textbook(N) == exp_gf_polys(A, H, N, ordinary=True)


def test_chebyshev_case_gf():
    N = 6
    d = families.catalog("chebyshev-case", None, N + 2)
    seq = d.textbook(N)
    # (1 - t^2) sum_m (-1)^m (2x t + t^2)^m
    for n in range(N + 1):
        acc = []
        for m in range(n + 1):
            j = n - m
            if 0 <= j <= m:
                coeff = (-1) ** m * math.comb(m, j) * 2 ** (m - j)
                acc = oracles.padd(acc, [0] * (m - j) + [coeff])
        if n >= 2:
            for m in range(n - 1):
                j = n - 2 - m
                if 0 <= j <= m:
                    coeff = -((-1) ** m) * math.comb(m, j) * 2 ** (m - j)
                    acc = oracles.padd(acc, [0] * (m - j) + [coeff])
        assert seq[n] == Polynomial(acc)


def test_jacobi_series_level():
    alpha, beta = Fraction(1, 2), 2
    d = families.catalog("jacobi-case", {"alpha": alpha, "beta": beta}, 8)
    H, fbar = d.pair.coefficient_series()
    assert list(fbar.coeffs) == [Fraction(0)] + [Fraction(2 * k) for k in range(1, 9)]
    assert list(H.coeffs) == oracles.binomial_series(-1 - alpha - beta, 8, -1)


def test_gegenbauer_examples():
    d, A = families.gegenbauer_case(1, 1, 8)
    assert d.textbook(2)[2] == Polynomial([-1, 0, 4])
    d, _ = families.gegenbauer_case(Fraction(1, 2), Fraction(1, 2), 8)
    assert d.textbook(2)[2] == Polynomial([Fraction(-1, 2), 0, Fraction(3, 2)])
    for lam in (1, Fraction(1, 2), Fraction(3, 2), Fraction(-1, 3)):
        d, _ = families.gegenbauer_case(lam, lam, 8)
        assert d.textbook(6) == [Polynomial(oracles.gegenbauer(n, lam)) for n in range(7)]


def test_gegenbauer_parity_and_closed_form():
    for lam, lam0 in ((1, 1), (Fraction(3, 2), Fraction(1, 2)), (Fraction(1, 3), 2)):
        d, A = families.gegenbauer_case(lam, lam0, 8)
        g, f = d.g, d.f
        col = g
        for k in range(9):
            for n in range(k, 9):
                if (n - k) % 2:
                    assert A[n, k] == 0
                assert col[n] == families.gegenbauer_entry_closed_form(lam0, n, k)
            col = col * f


def test_gegenbauer_2ipogc():
    res = families.gegenbauer_2ipogc(1, 1, 6)
    assert res["agree"] and res["weight_agrees"] and res["argument_agrees"]
    res = families.gegenbauer_2ipogc(Fraction(3, 2), Fraction(1, 2), 6)
    assert res["agree"]
    zero = families.gegenbauer_2ipogc(1, 0, 6)
    assert [p(0) for p in zero["sequence"]] == [1, 0, 0, 0, 0, 0, 0]


def test_gegenbauer_2ipogc_against_composition_oracle():
    N = 3
    d = families.catalog("gegenbauer-case", {"lambda": 1, "lambda0": 1}, N)
    # inverse pair: A(t) = (1+t^2)^-1, H(t) = -2t/(1+t^2); iterate GF = A(t) A(H(t)) eps(x H(H(t)))
    A = [Fraction((-1) ** (n // 2)) if n % 2 == 0 else Fraction(0) for n in range(N + 1)]
    H = [Fraction(0)] + [-2 * A[n - 1] for n in range(1, N + 1)]
    AH = oracles.scompose_naive(A, H, N)
    HH = oracles.scompose_naive(H, H, N)
    W = oracles.smul(A, AH, N)
    expected = []
    for n in range(N + 1):
        expected.append(Polynomial([d.c(n) * oracles.smul(W, oracles.spow(HH, k, N), N)[n] / d.c(k)
                                    for k in range(n + 1)]))
    got = iterated.gf_2isp(iterated.IteratedSpec(d.pair, d.pair), N)
    assert got.polys == expected


def test_iterate_family_examples():
    seq = families.iterate_family("exponential", None, "umbral_literal", 4)
    assert [str(p) for p in seq] == ["1", "x", "x^2 + 2x", "x^3 + 6x^2 + 5x", "x^4 + 12x^3 + 32x^2 + 15x"]
    seq = families.iterate_family("falling-factorial", {"a": 1}, "umbral_literal", 4)
    assert str(seq[4]) == "x^4 - 12x^3 + 40x^2 - 35x"
    seq = families.iterate_family("laguerre", {"alpha": 0}, "umbral_literal", 2)
    assert str(seq[2]) == "1/4 x^2 + x - 1/2"
    assert seq.notes["frame"] == "textbook"


def test_falling_factorial_iterate_general_a():
    a = Fraction(3)
    for mode in iterated.MODES:
        seq = families.iterate_family("falling-factorial", {"a": a}, mode, 5)
        for n in range(6):
            expected = sum((Polynomial(oracles.falling(k, a)) * (families.stirling_first(n, k) / a ** k)
                            for k in range(n + 1)), Polynomial())
            assert seq[n] == expected
    # the variant weighting by a^n instead of a^-k disagrees once a != 1
    seq = families.iterate_family("falling-factorial", {"a": a}, "gf", 3)
    variant = sum((Polynomial(oracles.falling(k, a)) * (a ** 3 * families.stirling_first(3, k))
                   for k in range(4)), Polynomial())
    assert seq[3] != variant


def test_laguerre_alpha_zero_reduction():
    assert families.iterate_family("laguerre", None, "umbral_literal", 5).polys == \
        families.iterate_family("laguerre", {"alpha": 0}, "umbral_literal", 5).polys
    assert families.laguerre_iterate_oracle(0, 5) == [Polynomial(oracles.laguerre_iterate(n, 0)) for n in range(6)]
