"""Named Sheffer pairs and family-specific constructions.

Every pair is assembled from series operations directly; the textual
forms ``g_text``/``f_text`` are kept only so they can be cross-checked
against the expression parser.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from . import iterated, riordan, specparse
from .errors import IndexOutOfRange, InvalidParameter
from .polynomial import Polynomial
from .powerseries import (
    CLASSICAL,
    EXPONENTIAL,
    FormalPowerSeries,
    ReferenceSequence,
    as_rational,
    compose,
    cos_series,
    custom_reference,
    exp_series,
    log_series,
    mul_inverse,
    pow_series,
    sin_series,
    sqrt_series,
)
from .sheffer import PolynomialSequence, ShefferPair, columns_to_polys, sequence_from_gf


def _binom(r: Fraction, n: int) -> Fraction:
    """Generalized binomial ``C(r, n)`` for rational ``r``."""
    out = Fraction(1)
    for i in range(n):
        out = out * (r - i) / (i + 1)
    return out


def _unit(n):
    return Fraction(1)


def _factorial(n):
    return Fraction(math.factorial(n))


@dataclass(frozen=True, eq=False)
class FamilyDescriptor:
    """A catalog entry at fixed parameters.

    ``scale(n)`` is the factor with ``s_n = scale(n) * textbook_n`` where
    ``s_n`` is the Sheffer-normalized polynomial of the pair.
    """

    name: str
    params: dict
    g: FormalPowerSeries
    f: FormalPowerSeries
    c: ReferenceSequence
    scale: Callable[[int], Fraction] = _unit
    g_text: str = ""
    f_text: str = ""
    notes: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def pair(self) -> ShefferPair:
        return ShefferPair(self.g, self.f, self.c)

    @property
    def N(self) -> int:
        return min(self.g.order, self.f.order)

    def with_reference(self, c: ReferenceSequence) -> "FamilyDescriptor":
        """Same pair over another reference sequence; the textbook scale is dropped."""
        return FamilyDescriptor(self.name, dict(self.params), self.g, self.f, c, _unit,
                                self.g_text, self.f_text, self.notes, dict(self.extra))

    def sequence(self, N: int) -> PolynomialSequence:
        return sequence_from_gf(self.pair, N)

    def textbook(self, N: int) -> list[Polynomial]:
        return iterated.textbook_sequence(self.pair, self.scale, N)


def _rational(params, key, default):
    value = params.get(key, default)
    try:
        return as_rational(value)
    except (TypeError, ValueError) as exc:
        raise InvalidParameter("parameter %r must be a rational, got %r" % (key, value)) from exc


def _integer(params, key, default, minimum=None):
    value = _rational(params, key, default)
    if value.denominator != 1:
        raise InvalidParameter("parameter %r must be an integer, got %s" % (key, value))
    value = int(value)
    if minimum is not None and value < minimum:
        raise InvalidParameter("parameter %r must be at least %d, got %d" % (key, minimum, value))
    return value


def _nonzero(params, key, default):
    value = _rational(params, key, default)
    if value == 0:
        raise InvalidParameter("parameter %r must be nonzero" % key)
    return value


def _T(N):
    return FormalPowerSeries.variable(N)


def _one(N):
    return FormalPowerSeries.constant(1, N)


def _expm1(s):
    return exp_series(s) - 1


# Each builder returns (g, f, c, scale, g_text, f_text, notes).

def _hermite(p, N):
    T = _T(N)
    return (exp_series(T * T * Fraction(1, 4)), T * Fraction(1, 2), EXPONENTIAL, _unit,
            "exp(t^2/4)", "t/2", "H_n(x): exp(2xt - t^2)")


def _generalized_hermite(p, N):
    m = _integer(p, "m", 3, minimum=1)
    nu = _nonzero(p, "nu", 2)
    T = _T(N)
    u = T * (1 / nu)
    return (exp_series(u ** m), u, EXPONENTIAL, _unit,
            "exp((t/nu)^m)", "t/nu", "H_{n,m,nu}(x): exp(nu x t - t^m)")


def _laguerre(p, N):
    alpha = _rational(p, "alpha", 0)
    T = _T(N)
    g = pow_series(_one(N) - T, -alpha - 1)
    f = T * mul_inverse(T - 1)
    return (g, f, EXPONENTIAL, _factorial, "(1-t)^(-alpha-1)", "t/(t-1)",
            "s_n = n! L_n^(alpha)(x); (1-t)^(-alpha-1) exp(xt/(t-1))")


def _pidduck(p, N):
    T = _T(N)
    e = exp_series(T)
    return (2 * mul_inverse(e + 1), (e - 1) * mul_inverse(e + 1), EXPONENTIAL, _unit,
            "2/(exp(t)+1)", "(exp(t)-1)/(exp(t)+1)",
            "P_n(x): (1-t)^(-1) ((1+t)/(1-t))^x")


def _actuarial(p, N):
    beta = _rational(p, "beta", 1)
    T = _T(N)
    return (pow_series(_one(N) - T, -beta), log_series(_one(N) - T), EXPONENTIAL, _unit,
            "(1-t)^(-beta)", "log(1-t)", "a_n^(beta)(x): exp(beta t + x(1 - e^t))")


def _poisson_charlier(p, N):
    a = _nonzero(p, "a", 1)
    T = _T(N)
    f = _expm1(T) * a
    return (exp_series(f), f, EXPONENTIAL, _unit,
            "exp(a*(exp(t)-1))", "a*(exp(t)-1)", "c_n(x; a): e^(-t) (1 + t/a)^x")


def _peters(p, N):
    lam = _rational(p, "lambda", 1)
    mu = _integer(p, "mu", 1)
    T = _T(N)
    return ((exp_series(T * lam) + 1) ** mu, _expm1(T), EXPONENTIAL, _unit,
            "(1+exp(lambda*t))^mu", "exp(t)-1",
            "s_n(x; lambda, mu): (1 + (1+t)^lambda)^(-mu) (1+t)^x; mu integer so g(0) = 2^mu is rational")


def _bernoulli_second_kind(p, N):
    # t/(e^t - 1) computed one order higher so the division by t keeps order N
    T1 = _T(N + 1)
    q = _expm1(T1).shift_down(1)
    return (mul_inverse(q), _expm1(_T(N)), EXPONENTIAL, _unit,
            "t/(exp(t)-1)", "exp(t)-1", "b_n(x): t/log(1+t) (1+t)^x")


def _related(p, N):
    T = _T(N)
    return ((exp_series(T) + 1) * Fraction(1, 2), _expm1(T), EXPONENTIAL, _unit,
            "(1+exp(t))/2", "exp(t)-1", "r_n(x): 2/(2+t) (1+t)^x")


def _hahn(p, N):
    T = _T(N)
    cos = cos_series(T)
    return (mul_inverse(cos), sin_series(T) * mul_inverse(cos), EXPONENTIAL, _unit,
            "1/cos(t)", "sin(t)/cos(t)", "R_n(x): (1+t^2)^(-1/2) exp(x arctan t)")


def _shively(p, N):
    a = _rational(p, "a", 1)
    T = _T(N)
    g = (_one(N) + T) * pow_series(_one(N) - T, -a)
    f = -T * mul_inverse((_one(N) - T) ** 2)
    return (g, f, EXPONENTIAL, _factorial, "(1+t)/(1-t)^a", "-t/(1-t)^2",
            "s_n = n! R_n(a, x); ordinary in t, exponential in x")


def _jacobi_case(p, N):
    alpha = _rational(p, "alpha", 0)
    beta = _rational(p, "beta", 0)
    T = _T(N)
    root = sqrt_series(_one(N) + T * 2)
    g = pow_series(2 * mul_inverse(root + 1), 1 + alpha + beta)
    f = T * mul_inverse(T + 1 + root)
    return (g, f, CLASSICAL, _unit, "(2/(1+sqrt(1+2*t)))^(1+alpha+beta)",
            "t/(1+t+sqrt(1+2*t))", "classical c; validated at the series level only")


def _chebyshev_case(p, N):
    T = _T(N)
    root = sqrt_series(_one(N) - T * T)
    return (mul_inverse(root), -T * mul_inverse(root + 1), CLASSICAL, _unit,
            "1/sqrt(1-t^2)", "-t/(1+sqrt(1-t^2))",
            "classical c; sum s_n t^n = (1-t^2)/(1+2xt+t^2), i.e. (-1)^n t_n in the displayed convention")


def gegenbauer_reference(lam) -> ReferenceSequence:
    """``c_n = 1/C(-lambda, n)``, for which ``eps_c(u) = (1+u)^(-lambda)``."""
    lam = as_rational(lam)
    return custom_reference("gegenbauer(%s)" % lam, lambda n: 1 / _binom(-lam, n))


def _gegenbauer_case(p, N):
    lam = _rational(p, "lambda", 1)
    lam0 = _rational(p, "lambda0", lam if "lambda" in p else 1)
    if lam.denominator == 1 and lam <= 0 and -lam < N:
        raise InvalidParameter(
            "gegenbauer_case: c_n = 1/C(-lambda, n) vanishes for n > %d when lambda = %s"
            % (-lam, lam))
    T = _T(N)
    root = sqrt_series(_one(N) - T * T)
    g = pow_series(2 * mul_inverse(root + 1), lam0)
    f = -T * mul_inverse(root + 1)

    def scale(n):
        return 1 / _binom(-lam, n)

    return (g, f, gegenbauer_reference(lam), scale,
            "(2/(1+sqrt(1-t^2)))^lambda0", "-t/(1+sqrt(1-t^2))",
            "textbook_n = C(-lambda, n) s_n; (1+t^2)^(lambda-lambda0) (1-2xt+t^2)^(-lambda)")


def _falling_factorial(p, N):
    a = _nonzero(p, "a", 1)
    T = _T(N)
    return (_one(N), _expm1(T * a), EXPONENTIAL, _unit, "1", "exp(a*t)-1",
            "(x/a)_n: (1+t)^(x/a)")


def _exponential(p, N):
    T = _T(N)
    return (_one(N), log_series(_one(N) + T), EXPONENTIAL, _unit, "1", "log(1+t)",
            "phi_n(x): exp(x(e^t - 1))")


_BUILDERS = {
    "hermite": (_hermite, {}),
    "generalized-hermite": (_generalized_hermite, {"m": 3, "nu": 2}),
    "laguerre": (_laguerre, {"alpha": 0}),
    "pidduck": (_pidduck, {}),
    "actuarial": (_actuarial, {"beta": 1}),
    "poisson-charlier": (_poisson_charlier, {"a": 1}),
    "peters": (_peters, {"lambda": 1, "mu": 1}),
    "bernoulli-second-kind": (_bernoulli_second_kind, {}),
    "related": (_related, {}),
    "hahn": (_hahn, {}),
    "shively": (_shively, {"a": 1}),
    "jacobi-case": (_jacobi_case, {"alpha": 0, "beta": 0}),
    "chebyshev-case": (_chebyshev_case, {}),
    "gegenbauer-case": (_gegenbauer_case, {"lambda": 1, "lambda0": 1}),
    "falling-factorial": (_falling_factorial, {"a": 1}),
    "exponential": (_exponential, {}),
}

FAMILY_NAMES = tuple(_BUILDERS)


def canonical_name(name: str) -> str:
    key = name.strip().lower().replace("_", "-")
    if key not in _BUILDERS:
        raise InvalidParameter("unknown family %r; choose from %s" % (name, ", ".join(FAMILY_NAMES)))
    return key


def default_params(name: str) -> dict:
    return dict(_BUILDERS[canonical_name(name)][1])


def catalog(name: str, params=None, N: int = 10) -> FamilyDescriptor:
    """Descriptor for family ``name`` with series known to order ``N``."""
    key = canonical_name(name)
    builder, defaults = _BUILDERS[key]
    given = dict(params or {})
    unknown = set(given) - set(defaults)
    if unknown:
        raise InvalidParameter("family %s takes parameters %s, not %s"
                               % (key, sorted(defaults) or "none", sorted(unknown)))
    merged = dict(defaults)
    merged.update(given)
    merged = {k: _rational(merged, k, v) for k, v in merged.items()}
    g, f, c, scale, g_text, f_text, notes = builder(merged if key != "gegenbauer-case" else
                                                    _gegenbauer_params(given, merged), N)
    desc = FamilyDescriptor(key, merged, g, f, c, scale, g_text, f_text, notes)
    desc.pair  # validates g(0) != 0 and f delta
    return desc


def _gegenbauer_params(given, merged):
    # lambda0 defaults to lambda when only lambda is given
    if "lambda" in given and "lambda0" not in given:
        merged["lambda0"] = merged["lambda"]
    return merged


def describe_all() -> list[dict]:
    out = []
    for name in FAMILY_NAMES:
        d = catalog(name, None, 4)
        out.append({"name": name, "params": {k: str(v) for k, v in d.params.items()},
                    "g": d.g_text, "f": d.f_text, "c": d.c.label, "notes": d.notes})
    return out


@lru_cache(maxsize=None)
def _stirling_first_table(n: int):
    rows = [[1]]
    for m in range(1, n + 1):
        prev = rows[-1]
        row = [0] * (m + 1)
        for k in range(1, m + 1):
            row[k] = (prev[k - 1] if k - 1 < len(prev) else 0) - (m - 1) * (prev[k] if k < len(prev) else 0)
        rows.append(row)
    return tuple(tuple(r) for r in rows)


@lru_cache(maxsize=None)
def stirling_second_recurrence(n: int):
    """Triangle of ``S(m, k)`` for ``m <= n`` from ``S(m,k) = k S(m-1,k) + S(m-1,k-1)``."""
    rows = [[1]]
    for m in range(1, n + 1):
        prev = rows[-1]
        row = [0] * (m + 1)
        for k in range(1, m + 1):
            row[k] = k * (prev[k] if k < len(prev) else 0) + prev[k - 1]
        rows.append(row)
    return tuple(tuple(r) for r in rows)


def _check_index(n, k):
    if not (isinstance(n, int) and isinstance(k, int)) or n < 0 or k < 0 or k > n:
        raise IndexOutOfRange("need 0 <= k <= n, got n=%r, k=%r" % (n, k))


def stirling_first(n: int, k: int) -> Fraction:
    """Signed ``s(n, k)``: ``(x)_n = sum_k s(n, k) x^k``."""
    _check_index(n, k)
    return Fraction(_stirling_first_table(n)[n][k])


def stirling_second(n: int, k: int) -> Fraction:
    """``S(n, k) = (1/k!) sum_j (-1)^(k-j) C(k, j) j^n``."""
    _check_index(n, k)
    total = sum((-1) ** (k - j) * math.comb(k, j) * j ** n for j in range(k + 1))
    return Fraction(total, math.factorial(k))


def iterate_family(name: str, params=None, mode: str = "gf", N: int = 4,
                   order: str = "gf21", c: ReferenceSequence | None = None) -> PolynomialSequence:
    """2-iterated polynomials of a catalog family.

    ``umbral_literal`` composes textbook polynomials and returns them in the
    textbook frame; every other mode returns Sheffer-normalized polynomials.
    """
    desc = catalog(name, params, N)
    if c is not None:
        desc = desc.with_reference(c)
    spec = iterated.IteratedSpec(desc.pair, desc.pair, mode, order, desc.scale, desc.scale)
    seq = iterated.sequence(spec, N)
    seq.notes["frame"] = "textbook" if mode == "umbral_literal" else "sheffer"
    seq.notes["family"] = desc.name
    return seq


def laguerre_iterate_oracle(alpha, N: int) -> list[Polynomial]:
    """``sum_k (-1)^k/k! C(n+alpha, n-k) L_k^(alpha)(x)`` by direct summation.

    The Laguerre polynomials come from their explicit coefficients, not from
    any series machinery.
    """
    alpha = as_rational(alpha)

    def lag(n):
        return Polynomial([Fraction((-1) ** k, math.factorial(k)) * _binom(n + alpha, n - k)
                           for k in range(n + 1)])

    basis = [lag(k) for k in range(N + 1)]
    out = []
    for n in range(N + 1):
        acc = Polynomial()
        for k in range(n + 1):
            acc = acc + basis[k] * (Fraction((-1) ** k, math.factorial(k)) * _binom(n + alpha, n - k))
        out.append(acc)
    return out


def gegenbauer_case(lam, lam0, N: int):
    """Descriptor and monomial-expansion array of the Gegenbauer case."""
    desc = catalog("gegenbauer-case", {"lambda": lam, "lambda0": lam0}, N)
    return desc, riordan.build(desc.g, desc.f, desc.c, N)


def gegenbauer_entry_closed_form(lam0, n: int, k: int) -> Fraction:
    """``[t^n] g f^k`` in closed form: zero unless ``n - k`` is even, else
    ``(-1)^k (lam0 + k) / (2^n (lam0 + n)) C(lam0 + n, (n - k)/2)``.

    Needs ``lam0 + n != 0``.
    """
    lam0 = as_rational(lam0)
    if (n - k) % 2:
        return Fraction(0)
    return (Fraction((-1) ** k) * (lam0 + k) / (2 ** n * (lam0 + n))
            * _binom(lam0 + n, (n - k) // 2))


GEGENBAUER_2I_WEIGHT = "((1+t^2)/(1+6*t^2+t^4))^lambda0"
GEGENBAUER_2I_ARGUMENT = "4*t*(1+t^2)/(1+6*t^2+t^4)"


def gegenbauer_2ipogc(lam, lam0, N: int) -> dict:
    """2-iterated Gegenbauer-case polynomials and a closed-form comparison.

    The closed form ``W(t) eps_c(x K(t))`` with ``W``, ``K`` as in
    :data:`GEGENBAUER_2I_WEIGHT` and :data:`GEGENBAUER_2I_ARGUMENT` is parsed
    and expanded; its polynomials are compared with the pair-built iterate.
    """
    desc = catalog("gegenbauer-case", {"lambda": lam, "lambda0": lam0}, N)
    pair = desc.pair
    spec = iterated.IteratedSpec(pair, pair)
    built = iterated.gf_2isp(spec, N)
    bindings = {"lambda0": desc.params["lambda0"]}
    W = specparse.evaluate(GEGENBAUER_2I_WEIGHT, bindings, N)
    K = specparse.evaluate(GEGENBAUER_2I_ARGUMENT, bindings, N)
    closed = columns_to_polys(W, K, desc.c, N)
    fb = pair.coefficient_series()[1]
    H = mul_inverse(compose(desc.g, fb))
    K_built = compose(fb, fb)
    W_built = H * compose(H, fb)
    mismatches = [n for n in range(N + 1) if built[n] != closed[n]]
    return {"sequence": built, "closed_form": closed, "agree": not mismatches,
            "mismatches": mismatches,
            "weight_agrees": W_built == W, "argument_agrees": K_built == K}
