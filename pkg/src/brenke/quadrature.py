"""Float64 checks of the Beta-kernel integral representations.

Exact rational values are always computed first and treated as ground truth;
quadrature only confirms the integral forms.

Endpoint singularities ``(t-lo)**alpha`` and ``(hi-t)**beta`` are absorbed
by splitting at the midpoint and substituting ``t = lo + h u**(1/(1+alpha))``
(mirrored at ``hi``); the smooth remainder goes to adaptive Gauss-Kronrod
(``scipy.integrate.quad``).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Sequence

from scipy import integrate, special

from .brenke_core import Polynomial
from .errors import ParameterError, QuadratureError
from .scalar_series import pochhammer, to_scalar
from .special_families import gamma_mu, gghps_connection_closed

DEFAULT_TOL = 1e-10
ASSERT_TOL = 1e-9


def _as_float(v) -> float:
    if isinstance(v, str):
        return float(Fraction(v))
    return float(v)


def _is_nonneg_int(x: float) -> bool:
    return x >= 0 and float(x).is_integer()


def _quad(g: Callable[[float], float], tol: float, limit: int) -> tuple:
    value, err, info = integrate.quad(g, 0.0, 1.0, epsabs=tol, epsrel=0.0, limit=limit, full_output=1)[:3]
    return value, err


def integrate_endpoint_singular(
    f: Callable[[float], float],
    exponents: tuple = (0.0, 0.0),
    interval: tuple = (0.0, 1.0),
    tol: float = DEFAULT_TOL,
    limit: int = 200,
) -> float:
    """``int_lo^hi f(t) (t-lo)**left (hi-t)**right dt`` for smooth ``f``.

    Raises ``QuadratureError`` (carrying the achieved estimate) when the
    error estimate stays above ``tol``.
    """
    left, right = (_as_float(e) for e in exponents)
    lo, hi = (_as_float(v) for v in interval)
    if left <= -1 or right <= -1:
        raise ParameterError(f"non-integrable endpoint exponent in {(left, right)}")
    if tol <= 0:
        raise ParameterError("tolerance must be positive")
    if not hi > lo:
        raise ParameterError("interval must satisfy lo < hi")
    width = hi - lo
    h = width / 2
    piece_tol = tol / 4

    if _is_nonneg_int(left):
        def g_left(u):
            t = lo + h * u
            return h * f(t) * (t - lo) ** left * (hi - t) ** right
    else:
        q = 1.0 / (1.0 + left)
        scale = h ** (1.0 + left) / (1.0 + left)

        def g_left(u):
            s = h * u**q
            return scale * f(lo + s) * (width - s) ** right

    if _is_nonneg_int(right):
        def g_right(u):
            t = hi - h * u
            return h * f(t) * (t - lo) ** left * (hi - t) ** right
    else:
        q2 = 1.0 / (1.0 + right)
        scale2 = h ** (1.0 + right) / (1.0 + right)

        def g_right(u):
            s = h * u**q2
            return scale2 * f(hi - s) * (width - s) ** left

    v1, e1 = _quad(g_left, piece_tol, limit)
    v2, e2 = _quad(g_right, piece_tol, limit)
    value, err = v1 + v2, e1 + e2
    if not math.isfinite(value) or err > tol:
        raise QuadratureError(
            f"quadrature did not converge: estimate {value!r}, error {err:.3e} > tol {tol:.1e}",
            estimate=value,
            error=err,
        )
    return value


def beta_function(a, b) -> float:
    return float(special.beta(_as_float(a), _as_float(b)))


def _float_poly(p: Polynomial) -> Callable[[float], float]:
    coeffs = p.to_floats()

    def ev(x: float) -> float:
        acc = 0.0
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    return ev


def theta_integral_beta(gamma, delta, p: Polynomial, x, tol: float = DEFAULT_TOL) -> float:
    """``1/B(gamma, delta-gamma) int_0^1 t**(gamma-1) (1-t)**(delta-gamma-1) p(xt) dt``."""
    g, d, x = _as_float(gamma), _as_float(delta), _as_float(x)
    if not 0 < g < d:
        raise ParameterError(f"need 0 < gamma < delta, got gamma={g}, delta={d}")
    pf = _float_poly(p)
    norm = beta_function(g, d - g)
    val = integrate_endpoint_singular(lambda t: pf(x * t), (g - 1, d - g - 1), (0.0, 1.0), tol * norm)
    return val / norm


def theta_exact_beta(gamma, delta, p: Polynomial, x) -> Fraction:
    """``sum_n (gamma)_n/(delta)_n p_n x**n`` exactly."""
    g, d, x = to_scalar(gamma), to_scalar(delta), to_scalar(x)
    return sum((c * pochhammer(g, n) / pochhammer(d, n) * x**n for n, c in enumerate(p.coeffs)), Fraction(0))


def _require_dunkl_order(m1: float, m2: float) -> None:
    if not -0.5 < m1 < m2:
        raise ParameterError(f"need -1/2 < mu1 < mu2, got mu1={m1}, mu2={m2}")


def theta_integral_dunkl(mu1, mu2, p: Polynomial, x, tol: float = DEFAULT_TOL) -> float:
    """``1/B(mu1+1/2, mu2-mu1) int_{-1}^1 p(xt) |t|**(2mu1) (1-t)**(mu2-mu1-1) (1+t)**(mu2-mu1) dt``."""
    m1, m2, x = _as_float(mu1), _as_float(mu2), _as_float(x)
    _require_dunkl_order(m1, m2)
    c = m2 - m1
    pf = _float_poly(p)
    norm = beta_function(m1 + 0.5, c)
    neg = integrate_endpoint_singular(
        lambda t: pf(x * t) * (1.0 - t) ** (c - 1.0), (c, 2 * m1), (-1.0, 0.0), tol * norm / 2
    )
    pos = integrate_endpoint_singular(
        lambda t: pf(x * t) * (1.0 + t) ** c, (2 * m1, c - 1.0), (0.0, 1.0), tol * norm / 2
    )
    return (neg + pos) / norm


def intertwining_integral(mu, p: Polynomial, x, tol: float = DEFAULT_TOL) -> float:
    """``V_mu p(x) = 1/B(1/2, mu) int_{-1}^1 p(xt) (1-t)**(mu-1) (1+t)**mu dt``, ``mu > 0``."""
    m, x = _as_float(mu), _as_float(x)
    if not m > 0:
        raise ParameterError(f"need mu > 0, got {m}")
    pf = _float_poly(p)
    norm = beta_function(0.5, m)
    return integrate_endpoint_singular(lambda t: pf(x * t), (m, m - 1.0), (-1.0, 1.0), tol * norm) / norm


def dunkl_ratio_exact(mu1, mu2, p: Polynomial, x) -> Fraction:
    """``sum_n gamma_mu1(n)/gamma_mu2(n) p_n x**n`` exactly."""
    x = to_scalar(x)
    return sum(
        (c * gamma_mu(mu1, n) / gamma_mu(mu2, n) * x**n for n, c in enumerate(p.coeffs)), Fraction(0)
    )


def beta_ratio_quadrature(mu1, mu2, n: int, tol: float = DEFAULT_TOL) -> float:
    """``B(mu1+1/2+p+e, mu2-mu1) / B(mu1+1/2, mu2-mu1)`` with the numerator by quadrature."""
    m1, m2 = _as_float(mu1), _as_float(mu2)
    _require_dunkl_order(m1, m2)
    p, eps = divmod(n, 2)
    c = m2 - m1
    norm = beta_function(m1 + 0.5, c)
    num = integrate_endpoint_singular(lambda t: 1.0, (m1 + p + eps - 0.5, c - 1.0), (0.0, 1.0), tol * norm)
    return num / norm


def kernel_forms_agree(mu1, mu2, points: Sequence[float], rtol: float = 1e-12) -> bool:
    """``(1-t**2)**c / (1-t)`` against ``(1-t)**(c-1) (1+t)**c`` at interior points."""
    c = _as_float(mu2) - _as_float(mu1)
    for t in points:
        if not -1.0 < t < 1.0:
            raise ParameterError("kernel comparison points must lie in (-1, 1)")
        printed = (1.0 - t * t) ** c / (1.0 - t)
        factored = (1.0 - t) ** (c - 1.0) * (1.0 + t) ** c
        if abs(printed - factored) > rtol * max(1.0, abs(factored)):
            return False
    return True


def gghps_cc_integral(n: int, i: int, a, b, mu1, mu2, d: int, tol: float = DEFAULT_TOL) -> float:
    """Connection coefficient ``C_{n-i(d+1)}(n)`` from its integral representation.

    Kernel ``t**(n-i(d+1)) |t|**(2mu1) (b - a t**(d+1))**i (1-t**2)**(mu2-mu1) / (1-t)``.
    """
    m1, m2 = _as_float(mu1), _as_float(mu2)
    _require_dunkl_order(m1, m2)
    if not 0 <= i <= n // (d + 1):
        raise ParameterError(f"index i = {i} out of range 0..{n // (d + 1)}")
    af, bf = _as_float(a), _as_float(b)
    c = m2 - m1
    e = n - i * (d + 1)
    pref = math.factorial(n) / (math.factorial(i) * math.factorial(e)) / beta_function(m1 + 0.5, c)

    def core(t):
        return t**e * (bf - af * t ** (d + 1)) ** i

    itol = tol / max(pref, 1.0) / 2
    neg = integrate_endpoint_singular(lambda t: core(t) * (1.0 - t) ** (c - 1.0), (c, 2 * m1), (-1.0, 0.0), itol)
    pos = integrate_endpoint_singular(lambda t: core(t) * (1.0 + t) ** c, (2 * m1, c - 1.0), (0.0, 1.0), itol)
    return pref * (neg + pos)


def exp_mu_truncation(mu, degree: int) -> Polynomial:
    return Polynomial(tuple(1 / gamma_mu(mu, k) for k in range(degree + 1)))


def _report(test: str, exact, numeric: float, tol: float) -> dict:
    ex = float(exact)
    err = abs(ex - numeric)
    return {"test": test, "exact": ex, "numeric": numeric, "abs_err": err, "pass": bool(err < tol)}


BETA_GRID = (("1/2", "3/2"), ("1", "2"), ("1/3", "1"), ("3/4", "5/2"), ("2", "3"))
MU_GRID = ("1/2", "1", "3/2")
MU_PAIRS = tuple((MU_GRID[p], MU_GRID[q]) for p in range(3) for q in range(p + 1, 3))
EXP_POINTS = (-0.9, -0.4, 0.3, 0.8, 1.0)


def check_integrals(n_max: int = 10, tol: float = ASSERT_TOL) -> list:
    """Run every integral-representation check; one report dict per check."""
    reports = []
    for g, d in BETA_GRID:
        for n in range(n_max + 1):
            p = Polynomial.monomial(n)
            reports.append(
                _report(f"theta_beta(gamma={g},delta={d},n={n})", theta_exact_beta(g, d, p, 1),
                        theta_integral_beta(g, d, p, 1.0), tol)
            )
    p = Polynomial((1, 0, 1))
    reports.append(
        _report("theta_beta(gamma=1/2,delta=3/2,1+x^2,x=7/10)", theta_exact_beta("1/2", "3/2", p, "7/10"),
                theta_integral_beta("1/2", "3/2", p, 0.7), tol)
    )
    for m1, m2 in MU_PAIRS + (("0", "1/2"), ("0", "1")):
        for n in range(n_max + 1):
            p = Polynomial.monomial(n)
            reports.append(
                _report(f"theta_dunkl(mu1={m1},mu2={m2},n={n})", dunkl_ratio_exact(m1, m2, p, 1),
                        theta_integral_dunkl(m1, m2, p, 1.0), tol)
            )
            p_, eps = divmod(n, 2)
            reports.append(
                _report(f"beta_ratio(mu1={m1},mu2={m2},n={n})", gamma_mu(m1, n) / gamma_mu(m2, n),
                        beta_ratio_quadrature(m1, m2, n), tol)
            )
    for mu in MU_GRID:
        for n in range(n_max + 1):
            p = Polynomial.monomial(n)
            reports.append(
                _report(f"intertwining(mu={mu},n={n})", gamma_mu(0, n) / gamma_mu(mu, n),
                        intertwining_integral(mu, p, 1.0), tol)
            )
    for d in (1, 2):
        for n in range(0, 7):
            for a, b in (("-1", "-1"), ("1", "2"), ("2", "-1")):
                for m1, m2 in (("0", "1"), ("1/2", "3/2"), ("0", "1/2")):
                    for i in range(n // (d + 1) + 1):
                        exact = gghps_connection_closed(n, i, a, b, m1, m2, d)
                        reports.append(
                            _report(f"gghps_cc(d={d},n={n},i={i},a={a},b={b},mu1={m1},mu2={m2})", exact,
                                    gghps_cc_integral(n, i, a, b, m1, m2, d), tol)
                        )
    for m1, m2 in MU_PAIRS + (("0", "1/2"),):
        src = exp_mu_truncation(m1, 12)
        dst = exp_mu_truncation(m2, 12)
        for x in EXP_POINTS:
            reports.append(
                _report(f"exp_mu_transfer(mu1={m1},mu2={m2},x={x})", dst(Fraction(x)),
                        theta_integral_dunkl(m1, m2, src, x), 1e-8)
            )
    for m1, m2 in MU_PAIRS:
        ok = kernel_forms_agree(m1, m2, [-0.95, -0.5, 0.0, 0.25, 0.75, 0.99])
        reports.append({"test": f"kernel_forms(mu1={m1},mu2={m2})", "exact": 0.0, "numeric": 0.0,
                        "abs_err": 0.0 if ok else float("inf"), "pass": ok})
    return reports
