"""Concrete Brenke families and their closed-form expansion coefficients.

Covers the Dunkl factorial ``gamma_mu``, the generalized exponential
``exp_mu``, the Dunkl operator, Hermite, Gould-Hopper, generalized
Gould-Hopper (``e^{a t^{d+1}} exp_mu(xt)``, written GGHPS below) and the
generalized Hermite polynomials ``e^{-t^2} exp_mu(2xt)``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .brenke_core import (
    BrenkeFamily,
    Polynomial,
    TransferOperator,
    appell_family,
    brenke_poly,
    monomial_family,
    table_generator,
)
from .errors import ParameterError, PoleError
from .scalar_series import (
    ONE,
    ZERO,
    PowerSeries,
    binomial,
    format_scalar,
    is_nonpositive_integer,
    pochhammer,
    ps_exp_monomial,
    to_scalar,
)

DEFAULT_ORDER_FALLBACK = 64


def default_order() -> int:
    raw = os.environ.get("BRENKE_DEFAULT_ORDER")
    if not raw:
        return DEFAULT_ORDER_FALLBACK
    try:
        value = int(raw)
    except ValueError as exc:
        raise ParameterError(f"BRENKE_DEFAULT_ORDER must be an integer, got {raw!r}") from exc
    if value < 0:
        raise ParameterError("BRENKE_DEFAULT_ORDER must be nonnegative")
    return value


@dataclass(frozen=True)
class DunklParameter:
    """Rational ``mu`` outside the poles ``-1/2, -3/2, ...`` of ``gamma_mu``."""

    mu: Fraction

    def __post_init__(self):
        mu = to_scalar(self.mu)
        if is_nonpositive_integer(mu + Fraction(1, 2)):
            raise PoleError(f"mu = {format_scalar(mu)} is a pole of gamma_mu")
        object.__setattr__(self, "mu", mu)


def _mu(mu) -> Fraction:
    if isinstance(mu, DunklParameter):
        return mu.mu
    return DunklParameter(to_scalar(mu)).mu


@lru_cache(maxsize=None)
def _gamma_mu(mu: Fraction, n: int) -> Fraction:
    p, eps = divmod(n, 2)
    return 2**n * math.factorial(p) * pochhammer(mu + Fraction(1, 2), p + eps)


def gamma_mu(mu, n: int) -> Fraction:
    """Dunkl factorial ``gamma_mu(2p+e) = 2**(2p+e) p! (mu+1/2)_{p+e}``."""
    if n < 0:
        raise ParameterError("gamma_mu index must be nonnegative")
    return _gamma_mu(_mu(mu), n)


def exp_mu_coeffs(mu, order: int) -> PowerSeries:
    m = _mu(mu)
    return PowerSeries(tuple(1 / _gamma_mu(m, n) for n in range(order + 1)))


def dunkl_apply(mu, p: Polynomial) -> Polynomial:
    """Dunkl operator via ``x**n -> gamma_mu(n)/gamma_mu(n-1) x**(n-1)``."""
    m = _mu(mu)
    return Polynomial(
        tuple(p.coeffs[n] * _gamma_mu(m, n) / _gamma_mu(m, n - 1) for n in range(1, len(p.coeffs)))
    )


def dunkl_reference(mu, p: Polynomial) -> Polynomial:
    """``p' + mu (p(x) - p(-x)) / x`` computed coefficientwise."""
    m = _mu(mu)
    out = []
    for n in range(1, len(p.coeffs)):
        c = p.coeffs[n]
        reflected = 2 * c if n % 2 else ZERO  # x**n - (-x)**n
        out.append(n * c + m * reflected)
    return Polynomial(tuple(out))


def dunkl_transfer(mu1, mu2) -> TransferOperator:
    """``theta(x**n) = gamma_mu1(n)/gamma_mu2(n) x**n``: transfer from ``exp_mu1`` to ``exp_mu2``."""
    m1, m2 = _mu(mu1), _mu(mu2)
    return TransferOperator(lambda n: _gamma_mu(m1, n) / _gamma_mu(m2, n), label=f"dunkl({m1}->{m2})")


# -- family specifications -------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    """Tagged description of a built-in family.

    ``kind`` is one of ``monomial``, ``appell``, ``hermite``, ``gould_hopper``,
    ``gghps``, ``generalized_hermite``, ``hypergeometric_b``, ``brenke``;
    ``params`` holds the kind-specific parameters as exact values.
    """

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in _BUILDERS:
            raise ParameterError(f"unknown family {self.kind!r}; expected one of {sorted(_BUILDERS)}")

    @classmethod
    def from_json(cls, data) -> "FamilySpec":
        if isinstance(data, str):
            data = {"family": data}
        if not isinstance(data, dict) or "family" not in data:
            raise ParameterError("family spec must be an object with a 'family' field")
        kind = str(data["family"]).lower().replace("-", "_")
        params = {k: v for k, v in data.items() if k != "family"}
        return cls(kind, params)

    def to_json(self) -> dict:
        out = {"family": self.kind}
        for k, v in self.params.items():
            out[k] = _jsonable(v)
        return out


def _jsonable(v):
    if isinstance(v, Fraction):
        return format_scalar(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _int_param(params: dict, name: str, minimum: int) -> int:
    if name not in params:
        raise ParameterError(f"missing parameter {name!r}")
    v = params[name]
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ParameterError(f"parameter {name!r} must be an integer")
    try:
        v = int(v)
    except ValueError as exc:
        raise ParameterError(f"parameter {name!r} must be an integer") from exc
    if v < minimum:
        raise ParameterError(f"parameter {name!r} must be >= {minimum}")
    return v


def _scalar_param(params: dict, name: str, default=None) -> Fraction:
    if name not in params:
        if default is None:
            raise ParameterError(f"missing parameter {name!r}")
        return to_scalar(default)
    return to_scalar(params[name])


def gghps_family(d: int, a, mu, order: int | None = None) -> BrenkeFamily:
    """``A = exp(a t**(d+1))``, ``b_k = 1/gamma_mu(k)``."""
    order = default_order() if order is None else order
    if d < 0:
        raise ParameterError("d must be nonnegative")
    a = to_scalar(a)
    m = _mu(mu)
    return BrenkeFamily(
        ps_exp_monomial(a, d + 1, order),
        lambda k: 1 / _gamma_mu(m, k),
        label=f"gghps(d={d},a={format_scalar(a)},mu={format_scalar(m)})",
    )


def generalized_hermite_family(mu, order: int | None = None) -> BrenkeFamily:
    """``A = exp(-t**2)``, ``b_k = 2**k / gamma_mu(k)``."""
    order = default_order() if order is None else order
    m = _mu(mu)
    return BrenkeFamily(
        ps_exp_monomial(-1, 2, order),
        lambda k: Fraction(2**k) / _gamma_mu(m, k),
        label=f"generalized_hermite(mu={format_scalar(m)})",
    )


def hermite_family(order: int | None = None) -> BrenkeFamily:
    fam = generalized_hermite_family(0, order)
    return BrenkeFamily(fam.a, fam.b, label="hermite")


def _build_monomial(p, order):
    return monomial_family(order)


def _build_appell(p, order):
    if "A" not in p:
        raise ParameterError("appell family needs an 'A' coefficient list")
    declared = _int_param(p, "order", 0) if "order" in p else len(p["A"]) - 1
    series = PowerSeries.from_coeffs(p["A"], declared)
    return appell_family(series, label=p.get("label", "appell"))


def _build_hermite(p, order):
    return hermite_family(order)


def _build_gould_hopper(p, order):
    m = _int_param(p, "m", 1)
    fam = gghps_family(m - 1, _scalar_param(p, "h"), 0, order)
    return BrenkeFamily(fam.a, fam.b, label=f"gould_hopper(m={m},h={format_scalar(_scalar_param(p, 'h'))})")


def _build_gghps(p, order):
    return gghps_family(_int_param(p, "d", 1), _scalar_param(p, "a"), _scalar_param(p, "mu", 0), order)


def _build_generalized_hermite(p, order):
    return generalized_hermite_family(_scalar_param(p, "mu", 0), order)


def _build_hypergeometric_b(p, order):
    gammas = [to_scalar(g) for g in p.get("gammas", [])]
    deltas = [to_scalar(d) for d in p.get("deltas", [])]
    if len(gammas) != len(deltas):
        raise ParameterError("hypergeometric_b needs as many gammas as deltas")
    for g in gammas:
        if is_nonpositive_integer(g):
            raise ParameterError(f"gamma = {format_scalar(g)} makes b_k vanish")
    for d in deltas:
        if is_nonpositive_integer(d):
            raise PoleError(f"pole in denominator parameter {format_scalar(d)}")
    if "A" in p:
        declared = _int_param(p, "order", 0) if "order" in p else len(p["A"]) - 1
        a = PowerSeries.from_coeffs(p["A"], declared)
    else:
        a = PowerSeries.one(order)

    def b(k):
        v = Fraction(1, math.factorial(k))
        for g, d in zip(gammas, deltas):
            v *= pochhammer(g, k) / pochhammer(d, k)
        return v

    return BrenkeFamily(a, b, label="hypergeometric_b")


def _build_brenke(p, order):
    if "A" not in p or "b" not in p:
        raise ParameterError("brenke family needs 'A' and 'b' coefficient lists")
    declared = _int_param(p, "order", 0) if "order" in p else min(len(p["A"]), len(p["b"])) - 1
    a = PowerSeries.from_coeffs(p["A"], declared)
    b = [to_scalar(v) for v in p["b"]]
    return BrenkeFamily(a, table_generator(b, "explicit b list"), label=p.get("label", "brenke"))


_BUILDERS = {
    "monomial": _build_monomial,
    "appell": _build_appell,
    "hermite": _build_hermite,
    "gould_hopper": _build_gould_hopper,
    "gghps": _build_gghps,
    "generalized_hermite": _build_generalized_hermite,
    "hypergeometric_b": _build_hypergeometric_b,
    "brenke": _build_brenke,
}


def make_family(spec, order: int | None = None) -> BrenkeFamily:
    """Construct the family described by ``spec`` (a FamilySpec, dict or built-in name)."""
    if not isinstance(spec, FamilySpec):
        spec = FamilySpec.from_json(spec)
    order = default_order() if order is None else order
    return _BUILDERS[spec.kind](spec.params, order)


# -- GGHPS closed forms ----------------------------------------------------


def _fold_range(n: int, d: int) -> range:
    return range(n // (d + 1) + 1)


def gghps_explicit(d: int, a, mu, n: int) -> Polynomial:
    """``Q_n(x) = n! sum_k a**k / (k! gamma_mu(n-(d+1)k)) x**(n-(d+1)k)``."""
    a = to_scalar(a)
    m = _mu(mu)
    coeffs = [ZERO] * (n + 1)
    nf = math.factorial(n)
    for k in _fold_range(n, d):
        e = n - (d + 1) * k
        coeffs[e] = nf * a**k / (math.factorial(k) * _gamma_mu(m, e))
    return Polynomial(tuple(coeffs))


def gghps_inversion(d: int, a, mu, n: int) -> list:
    """``v`` with ``x**n / gamma_mu(n) = sum_m v[m] Q_m``."""
    a = to_scalar(a)
    _mu(mu)
    v = [ZERO] * (n + 1)
    for k in _fold_range(n, d):
        e = n - (d + 1) * k
        v[e] = (-a) ** k / (math.factorial(k) * math.factorial(e))
    return v


def gghps_connection_closed(n: int, i: int, a, b, mu1, mu2, d: int) -> Fraction:
    """``C_{n-i(d+1)}(n)`` expanding ``Q_n(., b, mu2)`` in the basis ``Q_m(., a, mu1)``."""
    if not 0 <= i <= n // (d + 1):
        raise ParameterError(f"index i = {i} out of range 0..{n // (d + 1)}")
    a, b = to_scalar(a), to_scalar(b)
    m1, m2 = _mu(mu1), _mu(mu2)
    total = ZERO
    for k in range(i + 1):
        e = n - k * (d + 1)
        total += (
            _gamma_mu(m1, e) / _gamma_mu(m2, e)
            * (-a) ** (i - k) / math.factorial(i - k)
            * b**k / math.factorial(k)
        )
    return total * Fraction(math.factorial(n), math.factorial(n - i * (d + 1)))


def gghps_connection_row(n: int, a, b, mu1, mu2, d: int) -> list:
    """Full row ``[C_m(n) for m in 0..n]``; zero off the ``n mod (d+1)`` lattice."""
    row = [ZERO] * (n + 1)
    for i in _fold_range(n, d):
        row[n - i * (d + 1)] = gghps_connection_closed(n, i, a, b, mu1, mu2, d)
    return row


def gghps_duplication(d: int, a, mu, alpha, n: int) -> list:
    """``v`` with ``Q_n(alpha x) = sum_m v[m] Q_m(x)``."""
    alpha = to_scalar(alpha)
    if alpha == 0:
        raise ParameterError("duplication undefined for alpha = 0")
    a = to_scalar(a)
    _mu(mu)
    v = [ZERO] * (n + 1)
    nf = math.factorial(n)
    for k in _fold_range(n, d):
        e = n - k * (d + 1)
        v[e] = nf * alpha**e * (1 - alpha ** (d + 1)) ** k * a**k / (math.factorial(e) * math.factorial(k))
    return v


def gghps_addition(d: int, a, mu, n: int) -> list:
    """``c[k] = n! / (k! gamma_mu(n-k))``, coefficient of ``y**(n-k) Q_k`` in ``T_y Q_n``."""
    m = _mu(mu)
    to_scalar(a)
    return [Fraction(math.factorial(n), math.factorial(k)) / _gamma_mu(m, n - k) for k in range(n + 1)]


def dunkl_translate(mu, p: Polynomial, y) -> Polynomial:
    """``exp_mu(y D_mu) p`` at rational ``y``."""
    m = _mu(mu)
    y = to_scalar(y)
    out = Polynomial()
    term = p
    k = 0
    while term.coeffs:
        out = out + term * (y**k / _gamma_mu(m, k))
        term = dunkl_apply(m, term)
        k += 1
    return out


def _float_dunkl_ratios(mu: Fraction, n: int) -> np.ndarray:
    return np.array([float(_gamma_mu(mu, k) / _gamma_mu(mu, k - 1)) for k in range(1, n + 1)])


def _float_gghps(d: int, a, mu, n: int) -> np.ndarray:
    return np.array([float(c) for c in gghps_explicit(d, a, mu, n).coeffs] or [0.0])


def gghps_convolution_residuals(d: int, a, mu, n: int, x_samples, y_samples) -> np.ndarray:
    """``|lhs - rhs|`` of the scaled convolution identity at each sample pair, in float64.

    ``lhs = 2**(n/(d+1)) [T_y g](x)`` with ``g(x) = Q_n(2**(-1/(d+1)) x)``,
    ``rhs = sum_k C(n,k) Q_k(y) Q_{n-k}(x)``.
    """
    m = _mu(mu)
    xs = np.asarray(x_samples, dtype=float)
    ys = np.asarray(y_samples, dtype=float)
    if xs.shape != ys.shape:
        raise ParameterError("x_samples and y_samples must pair up")
    c = 2.0 ** (-1.0 / (d + 1))
    q = [_float_gghps(d, a, m, k) for k in range(n + 1)]
    g = q[n] * c ** np.arange(len(q[n]))
    ratios = _float_dunkl_ratios(m, n)
    inv_gamma = np.array([1.0 / float(_gamma_mu(m, k)) for k in range(n + 1)])
    # D_mu^k g as coefficient arrays
    powers = [g]
    for _ in range(n):
        prev = powers[-1]
        if len(prev) <= 1:
            powers.append(np.zeros(1))
            continue
        powers.append(prev[1:] * ratios[: len(prev) - 1])
    out = np.empty_like(xs)
    for idx, (x, y) in enumerate(zip(xs, ys)):
        lhs = 0.0
        for k, pk in enumerate(powers):
            lhs += y**k * inv_gamma[k] * np.polynomial.polynomial.polyval(x, pk)
        lhs *= 2.0 ** (n / (d + 1))
        rhs = 0.0
        for k in range(n + 1):
            rhs += math.comb(n, k) * np.polynomial.polynomial.polyval(y, q[k]) * np.polynomial.polynomial.polyval(
                x, q[n - k]
            )
        out[idx] = abs(lhs - rhs)
    return out


def gghps_convolution_check(d: int, a, mu, n: int, x_samples, y_samples, tol: float = 1e-10) -> bool:
    return bool(np.all(gghps_convolution_residuals(d, a, mu, n, x_samples, y_samples) < tol))


def gghps_linearization_closed(i: int, j: int, r: int, a1, mu1, a2, mu2, a3, mu3, d: int) -> Fraction:
    """``L_ij(i+j-r(d+1))`` for ``Q_i(.,a1,mu1) Q_j(.,a2,mu2)`` in the basis ``Q_k(.,a3,mu3)``.

    The ``mu2`` factorial is taken at ``j - m(d+1)``, the exponent of the
    ``x`` power contributed by the second factor.
    """
    top = i + j
    if not 0 <= r <= top // (d + 1):
        raise ParameterError(f"r = {r} out of range 0..{top // (d + 1)}")
    a1, a2, a3 = to_scalar(a1), to_scalar(a2), to_scalar(a3)
    m1, m2, m3 = _mu(mu1), _mu(mu2), _mu(mu3)
    total = ZERO
    for n in _fold_range(i, d):
        for m in _fold_range(j, d):
            rest = r - m - n
            if rest < 0:
                continue
            total += (
                a1**n * a2**m * (-a3) ** rest
                / (math.factorial(n) * math.factorial(m) * math.factorial(rest))
                * _gamma_mu(m3, top - (m + n) * (d + 1))
                / (_gamma_mu(m1, i - n * (d + 1)) * _gamma_mu(m2, j - m * (d + 1)))
            )
    return total * Fraction(math.factorial(i) * math.factorial(j), math.factorial(top - r * (d + 1)))


def gghps_linearization_row(i: int, j: int, a1, mu1, a2, mu2, a3, mu3, d: int) -> list:
    top = i + j
    row = [ZERO] * (top + 1)
    for r in range(top // (d + 1) + 1):
        row[top - r * (d + 1)] = gghps_linearization_closed(i, j, r, a1, mu1, a2, mu2, a3, mu3, d)
    return row


def gghps_multi_linearization(specs: Sequence, d: int, target) -> list:
    """Coefficients of ``prod_s Q_{i_s}(., a_s, mu_s)`` in the basis ``Q_k(., a, mu)``.

    ``specs`` is a list of ``(i_s, a_s, mu_s)``; ``target`` is ``(a, mu)``.
    Returns a vector indexed by ``k``.
    """
    if len(specs) < 2:
        raise ParameterError("multi-product linearization needs at least two factors")
    degs = [int(s[0]) for s in specs]
    avals = [to_scalar(s[1]) for s in specs]
    mus = [_mu(s[2]) for s in specs]
    at, mt = to_scalar(target[0]), _mu(target[1])
    top = sum(degs)
    out = [ZERO] * (top + 1)
    pref = math.prod(math.factorial(i) for i in degs)
    ranges = [_fold_range(i, d) for i in degs]
    for r in range(top // (d + 1) + 1):
        total = ZERO
        for ss in product(*ranges):
            rest = r - sum(ss)
            if rest < 0:
                continue
            num = math.prod((av**s for av, s in zip(avals, ss)), start=ONE) * (-at) ** rest
            den = math.prod(math.factorial(s) for s in ss) * math.factorial(rest)
            gam = _gamma_mu(mt, top - (d + 1) * sum(ss))
            for deg, s, mu_s in zip(degs, ss, mus):
                gam /= _gamma_mu(mu_s, deg - (d + 1) * s)
            total += num / den * gam
        out[top - r * (d + 1)] = total * Fraction(pref, math.factorial(top - r * (d + 1)))
    return out


# -- generalized Hermite ---------------------------------------------------


def genhermite_normalized(mu, n: int) -> Polynomial:
    """``gamma_mu(n) / (n! [n/2]!) H_n^mu``."""
    m = _mu(mu)
    h = brenke_poly(generalized_hermite_family(m, n), n)
    return h * (_gamma_mu(m, n) / (math.factorial(n) * math.factorial(n // 2)))


def genhermite_connection_closed(mu1, mu2, n: int, k: int) -> Fraction:
    """Coefficient of ``Hhat_{n-2k}^{mu1}`` in ``Hhat_n^{mu2}``: ``(-1)**k 4**k (mu2-mu1)_k / k!``."""
    if not 0 <= k <= n // 2:
        raise ParameterError(f"k = {k} out of range 0..{n // 2}")
    m1, m2 = _mu(mu1), _mu(mu2)
    return (-1) ** k * Fraction(4**k, math.factorial(k)) * pochhammer(m2 - m1, k)


def genhermite_connection_unnormalized(mu1, mu2, n: int, k: int) -> Fraction:
    """``C_{n-2k}(n)`` expanding ``H_n^{mu2}`` in ``H_m^{mu1}`` (no normalization)."""
    if not 0 <= k <= n // 2:
        raise ParameterError(f"k = {k} out of range 0..{n // 2}")
    m1, m2 = _mu(mu1), _mu(mu2)
    h = n // 2
    return (
        Fraction((-1) ** k, math.factorial(k))
        * Fraction(math.factorial(n), math.factorial(n - 2 * k))
        * Fraction(4**k * math.factorial(h), math.factorial(h - k))
        * _gamma_mu(m1, n - 2 * k) / _gamma_mu(m2, n)
        * pochhammer(m2 - m1, k)
    )


def feldheim_coeff(i: int, j: int, k: int) -> Fraction:
    """Coefficient of ``H_{i+j-2k}`` in ``H_i H_j``."""
    if not 0 <= k <= min(i, j):
        raise ParameterError(f"k = {k} out of range 0..{min(i, j)}")
    return Fraction(binomial(i, k) * binomial(j, k) * 2**k * math.factorial(k))


BUILTIN_NAMES = ("monomial", "hermite")
