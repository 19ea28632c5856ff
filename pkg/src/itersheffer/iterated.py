"""2-iterated Sheffer sequences.

Two composition orders are kept apart:

``gf21``
    The sequence expanded from ``1/g1(fb1) * 1/g2(fb2(fb1)) * eps_c(x fb2(fb1))``.
    It is Sheffer for ``(g2 * g1(f2), f1(f2))``; its coefficient array is
    that of pair 1 applied to the polynomials of pair 2 (``s^(1)`` outer,
    ``s^(2)`` inner).

``theorem22``
    Sheffer for ``(g1 * g2(f1), f2(f1))``: the same construction with the
    roles of the two pairs swapped.

When both pairs coincide the two orders give the same sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import determinantal, riordan
from .errors import MixedReferenceSequence, ShapeMismatch
from .polynomial import Polynomial, umbral_substitute
from .powerseries import (
    FormalPowerSeries,
    comp_inverse,
    compose,
    mul_inverse,
)
from .sheffer import (
    PolynomialSequence,
    ShefferPair,
    columns_to_polys,
    functional_pair,
    sequence_from_gf,
)

ORDERS = ("gf21", "theorem22")
MODES = ("gf", "umbral_riordan", "umbral_literal", "determinantal", "conjugate")


def _unit(n):
    return Fraction(1)


@dataclass(frozen=True, eq=False)
class IteratedSpec:
    """Two pairs over a shared reference sequence.

    ``scale1``/``scale2`` map ``n`` to the factor with
    ``s_n = scale(n) * textbook_n``; they only matter for ``umbral_literal``.
    """

    pair1: ShefferPair
    pair2: ShefferPair
    mode: str = "gf"
    order: str = "gf21"
    scale1: Callable[[int], Fraction] = _unit
    scale2: Callable[[int], Fraction] = _unit

    def __post_init__(self):
        if self.order not in ORDERS:
            raise ValueError("order must be one of %s" % (ORDERS,))
        if self.mode not in MODES:
            raise ValueError("mode must be one of %s" % (MODES,))
        N = min(self.pair1.order, self.pair2.order)
        if not self.pair1.c.agrees_with(self.pair2.c, N):
            raise MixedReferenceSequence("both pairs must share one reference sequence")

    @property
    def c(self):
        return self.pair1.c

    def outer_inner(self):
        """``(outer, inner, outer_scale, inner_scale)`` for the chosen order."""
        if self.order == "gf21":
            return self.pair1, self.pair2, self.scale1, self.scale2
        return self.pair2, self.pair1, self.scale2, self.scale1

    def with_order(self, order: str) -> "IteratedSpec":
        return IteratedSpec(self.pair1, self.pair2, self.mode, order, self.scale1, self.scale2)

    def with_mode(self, mode: str) -> "IteratedSpec":
        return IteratedSpec(self.pair1, self.pair2, mode, self.order, self.scale1, self.scale2)


def _is_associated(pair: ShefferPair) -> bool:
    g = pair.g
    return g.coeffs[0] == 1 and not any(g.coeffs[1:])


def composed_pair(pair1: ShefferPair, pair2: ShefferPair, order: str = "theorem22") -> ShefferPair:
    """``(g1 g2(f1), f2(f1))`` for ``theorem22``; ``(g2 g1(f2), f1(f2))`` for ``gf21``."""
    N = min(pair1.order, pair2.order)
    if not pair1.c.agrees_with(pair2.c, N):
        raise MixedReferenceSequence("both pairs must share one reference sequence")
    if order == "gf21":
        pair1, pair2 = pair2, pair1
    elif order != "theorem22":
        raise ValueError("unknown order %r" % order)
    g = pair1.g * compose(pair2.g, pair1.f)
    f = compose(pair2.f, pair1.f)
    return ShefferPair(g, f, pair1.c)


def gf_2isp(spec: IteratedSpec, N: int) -> PolynomialSequence:
    """Column expansion of the iterated generating function."""
    outer, inner, _, _ = spec.outer_inner()
    g1, f1 = outer.g.truncate(N), outer.f.truncate(N)
    g2, f2 = inner.g.truncate(N), inner.f.truncate(N)
    fb1 = comp_inverse(f1)
    fb2 = comp_inverse(f2)
    K = compose(fb2, fb1)
    H = mul_inverse(compose(g1, fb1)) * mul_inverse(compose(g2, K))
    polys = columns_to_polys(H, K, spec.c, N)
    return PolynomialSequence(polys, None, "gf")


def gf_2iasp(f1: FormalPowerSeries, f2: FormalPowerSeries, c, N: int,
             order: str = "gf21") -> PolynomialSequence:
    """Associated special case ``g1 = g2 = 1``: expansion of ``eps_c(x fb2(fb1))``."""
    one = FormalPowerSeries.constant(1, N)
    spec = IteratedSpec(ShefferPair(one, f1, c), ShefferPair(one, f2, c), "gf", order)
    return gf_2isp(spec, N)


def compose_umbral(outer_coeffs, inner) -> PolynomialSequence:
    """``result_n = sum_k d[n][k] inner_k(x)``."""
    size = len(outer_coeffs)
    if len(inner) < size:
        raise ShapeMismatch("need %d inner polynomials, got %d" % (size, len(inner)))
    polys = []
    for n in range(size):
        row = outer_coeffs[n]
        if len(row) < n + 1 or any(row[k] for k in range(n + 1, len(row))):
            raise ShapeMismatch("outer coefficients must be lower triangular")
        if row[n] == 0:
            raise ShapeMismatch("outer coefficients need a nonzero diagonal")
        acc = Polynomial()
        for k in range(n + 1):
            if row[k]:
                acc = acc + inner[k] * row[k]
        polys.append(acc)
    for k in range(size):
        if inner[k].degree != k:
            raise ShapeMismatch("inner polynomial %d has degree %d" % (k, inner[k].degree))
    return PolynomialSequence(polys, None, "umbral")


def umbral_riordan(spec: IteratedSpec, N: int) -> PolynomialSequence:
    """Outer coefficient array ``(1/g(fbar), fbar)`` applied to the inner sequence."""
    outer, inner, _, _ = spec.outer_inner()
    A = riordan.build(outer.g, outer.f, spec.c, N)
    d = riordan.inverse(A).entries
    seq = compose_umbral(d, sequence_from_gf(inner, N))
    seq.route = "umbral_riordan"
    return seq


def textbook_sequence(pair: ShefferPair, scale, N: int) -> list[Polynomial]:
    return [p * (1 / Fraction(scale(n))) for n, p in enumerate(sequence_from_gf(pair, N))]


def umbral_literal(spec: IteratedSpec, N: int) -> PolynomialSequence:
    """Compose textbook-normalized polynomials by their raw monomial coefficients.

    For Laguerre this is ``sum_k (-1)^k/k! C(n+a, n-k) L_k^(a)(x)``; for
    families whose textbook normalization is the Sheffer one it agrees with
    :func:`umbral_riordan`.
    """
    outer, inner, so, si = spec.outer_inner()
    outer_text = textbook_sequence(outer, so, N)
    inner_text = textbook_sequence(inner, si, N)
    d = [[p[k] for k in range(n + 1)] for n, p in enumerate(outer_text)]
    seq = compose_umbral(d, inner_text)
    seq.route = "umbral_literal"
    return seq


def operational_correspondence(spec: IteratedSpec, N: int) -> list[Polynomial]:
    """Substitute ``x^k -> inner_k`` inside each textbook outer polynomial."""
    outer, inner, so, si = spec.outer_inner()
    inner_text = textbook_sequence(inner, si, N)
    return [umbral_substitute(p, inner_text) for p in textbook_sequence(outer, so, N)]


def determinantal_route(spec: IteratedSpec, N: int) -> PolynomialSequence:
    """Cramer determinants over the outer pair's monomial-expansion array.

    The system is ``inner_m = sum_k a[m][k] s^[2]_k`` with ``a = build(g_outer,
    f_outer)``.  The associated form is used when both pairs have ``g = 1``.
    """
    outer, inner, _, _ = spec.outer_inner()
    A = riordan.build(outer.g, outer.f, spec.c, N)
    inner_seq = sequence_from_gf(inner, N)
    if _is_associated(outer) and _is_associated(inner):
        polys = [determinantal.iterated_associated_det(A, inner_seq, n) for n in range(N + 1)]
    else:
        polys = [determinantal.iterated_det(A, inner_seq, n) for n in range(N + 1)]
    return PolynomialSequence(polys, None, "determinantal")


def forward_route(spec: IteratedSpec, N: int) -> list[Polynomial]:
    """Same triangular system as :func:`determinantal_route`, solved by substitution."""
    outer, inner, _, _ = spec.outer_inner()
    A = riordan.build(outer.g, outer.f, spec.c, N)
    return determinantal.forward_substitution(A, sequence_from_gf(inner, N), N)


def conjugate_representation(spec: IteratedSpec, N: int) -> PolynomialSequence:
    """Coefficients through the umbral pairing.

    ``d[n][k] = <h(t) K(t)^k | x^n> / c_k`` with
    ``h = 1/(g_out(fb_out) g_in(fb_in(fb_out)))`` and ``K = fb_in(fb_out)``.
    """
    outer, inner, _, _ = spec.outer_inner()
    c = spec.c
    fb_out = comp_inverse(outer.f.truncate(N))
    fb_in = comp_inverse(inner.f.truncate(N))
    K = compose(fb_in, fb_out)
    h = mul_inverse(compose(outer.g.truncate(N), fb_out) * compose(inner.g.truncate(N), K))
    column = [h]
    for k in range(1, N + 1):
        column.append(column[-1] * K)
    polys = []
    for n in range(N + 1):
        xn = Polynomial.monomial(n)
        polys.append(Polynomial([functional_pair(column[k], xn, c) / c(k)
                                 for k in range(n + 1)]))
    return PolynomialSequence(polys, None, "conjugate")


def sequence(spec: IteratedSpec, N: int) -> PolynomialSequence:
    """Dispatch on ``spec.mode``."""
    if spec.mode == "gf":
        return gf_2isp(spec, N)
    if spec.mode == "umbral_riordan":
        return umbral_riordan(spec, N)
    if spec.mode == "umbral_literal":
        return umbral_literal(spec, N)
    if spec.mode == "determinantal":
        return determinantal_route(spec, N)
    return conjugate_representation(spec, N)


def first_difference(p: Polynomial, q: Polynomial):
    """``(degree, p_coeff, q_coeff)`` of the lowest differing coefficient, or None."""
    for k in range(max(len(p.coeffs), len(q.coeffs))):
        if p[k] != q[k]:
            return k, p[k], q[k]
    return None


def consistency_report(spec: IteratedSpec, N: int) -> dict:
    """Compare every route, for both composition orders.

    The literal route is rescaled by the outer normalization so that all
    routes are compared in the Sheffer frame.  Returns a plain dict:
    ``{order: {"routes": {...}, "agree": {...}, "differences": [...]}}``
    plus ``"orders_agree"`` and ``"matches_gf"`` (which order reproduces
    the generating function of the ``gf21`` convention).
    """
    out = {}
    gf_reference = gf_2isp(spec.with_order("gf21"), N)
    for order in ORDERS:
        s = spec.with_order(order)
        _, _, so, _ = s.outer_inner()
        literal = umbral_literal(s, N)
        routes = {
            "gf": gf_2isp(s, N).polys,
            "umbral_riordan": umbral_riordan(s, N).polys,
            "umbral_literal": [p * Fraction(so(n)) for n, p in enumerate(literal)],
            "determinantal": determinantal_route(s, N).polys,
            "conjugate": conjugate_representation(s, N).polys,
        }
        names = list(routes)
        agree = {}
        differences = []
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                same = True
                for n in range(N + 1):
                    diff = first_difference(routes[a][n], routes[b][n])
                    if diff is not None:
                        same = False
                        differences.append({"routes": (a, b), "n": n, "degree": diff[0],
                                            "values": (str(diff[1]), str(diff[2]))})
                        break
                agree[(a, b)] = same
        out[order] = {"routes": routes, "agree": agree, "differences": differences,
                      "matches_gf21": routes["gf"] == gf_reference.polys}
    out["orders_agree"] = out["gf21"]["routes"]["gf"] == out["theorem22"]["routes"]["gf"]
    return out
