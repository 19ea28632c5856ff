import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from itersheffer import iterated as it
from itersheffer import riordan
from itersheffer.errors import MixedReferenceSequence, ShapeMismatch
from itersheffer.polynomial import Polynomial
from itersheffer.powerseries import (
    CLASSICAL,
    EXPONENTIAL,
    FormalPowerSeries as FPS,
    exp_series,
    log_series,
    mul_inverse,
    pow_series,
    t,
)
from itersheffer.sheffer import ShefferPair, reconstruct_monomials, sequence_from_gf

import oracles

N = 8


def one(n=N):
    return FPS.constant(1, n)


def exp_pair(n=N):
    return ShefferPair(one(n), log_series(1 + t(n)))


def ff_pair(n=N, a=1):
    return ShefferPair(one(n), exp_series(t(n) * a) - 1)


def laguerre_pair(alpha, n=N):
    T = t(n)
    return ShefferPair(pow_series(1 - T, -alpha - 1), T * mul_inverse(T - 1))


def fact(n):
    return Fraction(math.factorial(n))


def polys(lists):
    return [Polynomial(p) for p in lists]


def test_gf_examples():
    s = it.gf_2isp(it.IteratedSpec(ff_pair(), ff_pair()), 4)
    assert s[2] == Polynomial([0, -2, 1])
    s = it.gf_2isp(it.IteratedSpec(exp_pair(), exp_pair()), 4)
    assert s[3] == Polynomial([0, 5, 6, 1])
    lag = it.gf_2isp(it.IteratedSpec(laguerre_pair(3, 10), laguerre_pair(3, 10)), 10)
    assert lag.polys == [Polynomial.monomial(n) for n in range(11)]


def test_gf_2iasp_examples():
    assert it.gf_2iasp(t(6), t(6), EXPONENTIAL, 6).polys == [Polynomial.monomial(n) for n in range(7)]
    assert it.gf_2iasp(ff_pair().f, ff_pair().f, EXPONENTIAL, 4)[3] == Polynomial([0, 7, -6, 1])
    assert it.gf_2iasp(exp_pair().f, exp_pair().f, EXPONENTIAL, 4)[4] == Polynomial([0, 15, 32, 12, 1])


def test_2iep_matches_stirling_sum_and_corrected_gf():
    seq = it.gf_2isp(it.IteratedSpec(exp_pair(), exp_pair()), N)
    for n in range(N + 1):
        assert seq[n] == Polynomial(oracles.exp_iterate(n))
    # exp(x K(t)) with K = e^(e^t - 1) - 1, expanded by naive composition
    inner = oracles.exp_coeffs(1, N)
    inner[0] = Fraction(0)
    K = oracles.scompose_naive(oracles.exp_coeffs(1, N), inner, N)
    K[0] = Fraction(0)
    for n in range(N + 1):
        coeffs = [fact(n) * oracles.spow(K, k, N)[n] / fact(k) for k in range(n + 1)]
        assert seq[n] == Polynomial(coeffs)


def test_2iff_matches_stirling_sum():
    seq = it.gf_2isp(it.IteratedSpec(ff_pair(), ff_pair()), N)
    for n in range(N + 1):
        assert seq[n] == Polynomial(oracles.falling_iterate(n))


def test_falling_factorial_general_a():
    a = Fraction(2)
    seq = it.gf_2isp(it.IteratedSpec(ff_pair(a=a), ff_pair(a=a)), 6)
    s1 = oracles.stirling1_table(6)
    for n in range(7):
        expected = []
        for k in range(n + 1):
            expected = oracles.padd(expected, oracles.pscale(oracles.falling(k, a), s1[n][k] / a ** k))
        assert seq[n] == Polynomial(expected)


def test_compose_umbral_identity_and_errors():
    inner = sequence_from_gf(exp_pair(), 4)
    ident = [[Fraction(int(n == k)) for k in range(n + 1)] for n in range(5)]
    assert it.compose_umbral(ident, inner).polys == inner.polys
    with pytest.raises(ShapeMismatch):
        it.compose_umbral([[1, 1], [0, 1]], inner)
    with pytest.raises(ShapeMismatch):
        it.compose_umbral([[1], [0, 0]], inner)
    with pytest.raises(ShapeMismatch):
        it.compose_umbral([[1], [0, 1]], [Polynomial([1]), Polynomial([1])])


def test_umbral_literal_laguerre_table_value():
    pair = laguerre_pair(0)
    spec = it.IteratedSpec(pair, pair, scale1=fact, scale2=fact)
    lit = it.umbral_literal(spec, 4)
    assert lit[2] == Polynomial([Fraction(-1, 2), 1, Fraction(1, 4)])
    for n in range(5):
        assert lit[n] == Polynomial(oracles.laguerre_iterate(n, 0))
    assert it.umbral_riordan(spec, 6).polys == [Polynomial.monomial(n) for n in range(7)]


def test_operational_correspondence_equals_literal():
    for alpha in (0, 3, Fraction(1, 3)):
        pair = laguerre_pair(alpha)
        spec = it.IteratedSpec(pair, pair, scale1=fact, scale2=fact)
        assert it.operational_correspondence(spec, 6) == it.umbral_literal(spec, 6).polys


def test_composed_pair_examples():
    p = laguerre_pair(2)
    ident = ShefferPair(one(), t(N))
    for order in it.ORDERS:
        q = it.composed_pair(p, ident, order)
        assert q.g == p.g and q.f == p.f
        lag = it.composed_pair(p, p, order)
        assert lag.g == one() and lag.f == t(N)
    ff = it.composed_pair(ff_pair(), ff_pair())
    assert ff.f == exp_series(exp_series(t(N)) - 1) - 1


def test_mixed_reference_rejected():
    with pytest.raises(MixedReferenceSequence):
        it.IteratedSpec(exp_pair(), exp_pair().with_reference(CLASSICAL))


def test_conjugate_examples():
    ident = ShefferPair(one(), t(N))
    assert it.conjugate_representation(it.IteratedSpec(ident, ident), 5).polys == \
        [Polynomial.monomial(n) for n in range(6)]
    seq = it.conjugate_representation(it.IteratedSpec(exp_pair(), exp_pair()), 4)
    assert seq.polys == polys([[1], [0, 1], [0, 2, 1], [0, 5, 6, 1], [0, 15, 32, 12, 1]])


def test_consistency_report_examples():
    rep = it.consistency_report(it.IteratedSpec(exp_pair(), exp_pair()), 6)
    assert all(rep["gf21"]["agree"].values())
    assert rep["orders_agree"]
    pair = laguerre_pair(0)
    rep = it.consistency_report(it.IteratedSpec(pair, pair, scale1=fact, scale2=fact), 5)
    agree = rep["gf21"]["agree"]
    assert agree[("gf", "umbral_riordan")] and agree[("gf", "determinantal")] and agree[("gf", "conjugate")]
    assert not agree[("gf", "umbral_literal")]
    assert rep["gf21"]["differences"]


def test_distinct_pairs_order_detection():
    spec = it.IteratedSpec(laguerre_pair(0), exp_pair(), scale1=fact)
    rep = it.consistency_report(spec, 5)
    assert not rep["orders_agree"]
    assert rep["gf21"]["matches_gf21"] and not rep["theorem22"]["matches_gf21"]
    for order in it.ORDERS:
        agree = rep[order]["agree"]
        assert agree[("gf", "umbral_riordan")] and agree[("gf", "determinantal")] and agree[("gf", "conjugate")]


def test_reconstruction_identities_distinct_pairs():
    for order in it.ORDERS:
        spec = it.IteratedSpec(laguerre_pair(1), ShefferPair(exp_series(t(N)), log_series(1 + t(N))), order=order)
        outer, inner, _, _ = spec.outer_inner()
        s2 = it.gf_2isp(spec, 6)
        comp = it.composed_pair(spec.pair1, spec.pair2, order)
        A = riordan.build(comp.g, comp.f, EXPONENTIAL, 6)
        assert reconstruct_monomials(A, s2) == [Polynomial.monomial(n) for n in range(7)]
        B = riordan.build(outer.g, outer.f, EXPONENTIAL, 6)
        assert reconstruct_monomials(B, s2) == sequence_from_gf(inner, 6).polys
        # the composed pair's array does not map s^[2] onto the inner sequence
        assert reconstruct_monomials(A, s2) != sequence_from_gf(inner, 6).polys


small = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def pairs(draw, n=6, associated=False, c=EXPONENTIAL):
    g = draw(st.lists(small, min_size=n + 1, max_size=n + 1))
    f = draw(st.lists(small, min_size=n + 1, max_size=n + 1))
    g[0] = draw(small.filter(bool))
    if associated:
        g = [1] + [0] * n
    f[0] = 0
    f[1] = draw(small.filter(bool))
    return ShefferPair(FPS(g, n), FPS(f, n), c)


@settings(max_examples=15, deadline=None)
@given(pairs(), pairs(), st.sampled_from(it.ORDERS))
def test_routes_agree_random(p1, p2, order):
    spec = it.IteratedSpec(p1, p2, order=order)
    gf = it.gf_2isp(spec, 6).polys
    assert it.umbral_riordan(spec, 6).polys == gf
    assert it.determinantal_route(spec, 6).polys == gf
    assert it.conjugate_representation(spec, 6).polys == gf
    assert it.forward_route(spec, 6) == gf
    assert sequence_from_gf(it.composed_pair(p1, p2, order), 6).polys == gf


@settings(max_examples=15, deadline=None)
@given(pairs(associated=True), pairs(associated=True))
def test_associated_routes_agree_random(p1, p2):
    spec = it.IteratedSpec(p1, p2)
    gf = it.gf_2iasp(p1.f, p2.f, EXPONENTIAL, 6).polys
    assert it.umbral_riordan(spec, 6).polys == gf == it.determinantal_route(spec, 6).polys


@settings(max_examples=10, deadline=None)
@given(pairs(c=CLASSICAL), pairs(c=CLASSICAL))
def test_routes_agree_classical_reference(p1, p2):
    spec = it.IteratedSpec(p1, p2)
    gf = it.gf_2isp(spec, 6).polys
    assert it.umbral_riordan(spec, 6).polys == gf == it.conjugate_representation(spec, 6).polys
