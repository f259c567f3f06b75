"""Brenke families ``A(t) B(xt) = sum P_n(x) t**n / n!`` and their operators.

A family is the pair (truncated series ``A``, generator ``k -> b_k``). From it
we get the explicit polynomials, the inversion formula, the lowering operator
``D_b`` and, for two families, the diagonal transfer operator ``theta`` with
``theta(x**n) = b2_n / b1_n x**n`` and its XD-expansion coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .errors import InsufficientOrderError, ParameterError, PoleError
from .scalar_series import (
    ONE,
    ZERO,
    PowerSeries,
    binomial,
    hypergeometric_terminating,
    pochhammer,
    ps_reciprocal,
    to_scalar,
)


@dataclass(frozen=True)
class Polynomial:
    """Dense univariate polynomial, ``coeffs[k]`` multiplies ``x**k``.

    Trailing zeros are stripped, so the zero polynomial has ``coeffs == ()``.
    """

    coeffs: tuple = ()

    def __post_init__(self):
        c = [to_scalar(v) for v in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monomial(cls, n: int, coeff=ONE) -> "Polynomial":
        return cls((ZERO,) * n + (to_scalar(coeff),))

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((to_scalar(c),))

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(self.coeff(k) + other.coeff(k) for k in range(n)))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(self.coeff(k) - other.coeff(k) for k in range(n)))

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            s = to_scalar(other)
            return Polynomial(tuple(c * s for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def __call__(self, x):
        """Horner evaluation; exact for rationals, float for floats."""
        acc = 0 if not isinstance(x, float) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + (c if not isinstance(x, float) else float(c))
        return acc

    def scale_arg(self, a) -> "Polynomial":
        """``x -> p(a x)``."""
        a = to_scalar(a)
        return Polynomial(tuple(c * a**k for k, c in enumerate(self.coeffs)))

    def to_floats(self) -> list:
        return [float(c) for c in self.coeffs]


def linear_combination(coeffs: Sequence, polys: Sequence[Polynomial]) -> Polynomial:
    out = Polynomial()
    for c, p in zip(coeffs, polys):
        if c:
            out = out + p * c
    return out


@dataclass(frozen=True, eq=False)
class BrenkeFamily:
    """Brenke family given by the series ``a`` (``A``) and ``b(k) = b_k``.

    ``b`` may be an arbitrary pure callable; values are cached and checked to be
    nonzero on first access.
    """

    a: PowerSeries
    b: Callable[[int], Fraction]
    label: str = "brenke"
    _bk: Callable = field(init=False, repr=False)

    def __post_init__(self):
        if self.a.coeffs[0] == 0:
            raise ParameterError(f"family {self.label}: a_0 must be nonzero")
        raw = self.b

        @lru_cache(maxsize=None)
        def bk(k: int) -> Fraction:
            if k < 0:
                raise ParameterError("b_k requested for negative k")
            v = to_scalar(raw(k))
            if v == 0:
                raise ParameterError(f"family {self.label}: b_{k} vanishes")
            return v

        object.__setattr__(self, "_bk", bk)

    def bk(self, k: int) -> Fraction:
        return self._bk(k)

    def ak(self, k: int) -> Fraction:
        return self.a[k]

    @property
    def order(self) -> int:
        return self.a.order

    def a_hat(self, order: int) -> PowerSeries:
        """Coefficients of ``1 / A(t)``."""
        return _reciprocal_cached(self.a, order)

    def __repr__(self):
        return f"BrenkeFamily({self.label!r}, order={self.order})"


@lru_cache(maxsize=256)
def _reciprocal_cached(a: PowerSeries, order: int) -> PowerSeries:
    return ps_reciprocal(a, order)


def table_generator(values: Sequence, label: str = "table") -> Callable[[int], Fraction]:
    """Generator for ``b_k`` known only up to ``len(values) - 1``."""
    values = tuple(to_scalar(v) for v in values)

    def gen(k: int) -> Fraction:
        if k >= len(values):
            raise InsufficientOrderError(
                f"insufficient order: b_{k} requested but {label} defines b only to order {len(values) - 1}"
            )
        return values[k]

    return gen


def _require_family_order(fam: BrenkeFamily, n: int) -> None:
    if n > fam.order:
        raise InsufficientOrderError(
            f"insufficient order: degree {n} needs A valid to order {n}, family {fam.label} has {fam.order}"
        )


def brenke_poly(fam: BrenkeFamily, n: int) -> Polynomial:
    """``P_n(x) = n! sum_m b_m a_{n-m} x**m``."""
    _require_family_order(fam, n)
    f = math.factorial(n)
    return Polynomial(tuple(f * fam.bk(m) * fam.ak(n - m) for m in range(n + 1)))


def brenke_polys(fam: BrenkeFamily, n_max: int) -> list:
    return [brenke_poly(fam, n) for n in range(n_max + 1)]


def inversion_coeffs(fam: BrenkeFamily, n: int) -> list:
    """Vector ``v`` with ``b_n x**n = sum_m v[m] P_m(x) / m!``; ``v[m] = ahat_{n-m}``."""
    _require_family_order(fam, n)
    ahat = fam.a_hat(n)
    return [ahat[n - m] for m in range(n + 1)]


def lowering_apply(fam: BrenkeFamily, p: Polynomial) -> Polynomial:
    """``D_b`` on ``p``: ``x**n -> b_{n-1}/b_n x**(n-1)``."""
    return Polynomial(
        tuple(p.coeffs[n] * fam.bk(n - 1) / fam.bk(n) for n in range(1, len(p.coeffs)))
    )


def lowering_power(fam: BrenkeFamily, p: Polynomial, k: int) -> Polynomial:
    for _ in range(k):
        if not p.coeffs:
            break
        p = lowering_apply(fam, p)
    return p


def series_in_lowering(fam: BrenkeFamily, coeffs: Sequence, p: Polynomial) -> Polynomial:
    """``F(D_b) p`` for ``F = sum coeffs[k] t**k``; only ``k <= deg p`` contribute."""
    out = Polynomial()
    term = p
    for k in range(p.degree + 1):
        if k >= len(coeffs):
            raise InsufficientOrderError(
                f"insufficient order: operator series needs coefficient {k}, has {len(coeffs) - 1}"
            )
        if coeffs[k]:
            out = out + term * coeffs[k]
        term = lowering_apply(fam, term)
    return out


@dataclass(frozen=True, eq=False)
class TransferOperator:
    """Diagonal operator ``x**n -> ratio(n) x**n``."""

    ratio: Callable[[int], Fraction]
    label: str = "theta"
    _r: Callable = field(init=False, repr=False)

    def __post_init__(self):
        raw = self.ratio

        @lru_cache(maxsize=None)
        def r(n: int) -> Fraction:
            v = to_scalar(raw(n))
            if v == 0:
                raise ParameterError(f"transfer {self.label}: ratio r_{n} vanishes")
            return v

        object.__setattr__(self, "_r", r)

    def r(self, n: int) -> Fraction:
        return self._r(n)

    def inverse(self) -> "TransferOperator":
        return TransferOperator(lambda n: 1 / self.r(n), label=f"{self.label}^-1")


def identity_transfer() -> TransferOperator:
    return TransferOperator(lambda n: ONE, label="identity")


def transfer_between(fam1: BrenkeFamily, fam2: BrenkeFamily) -> TransferOperator:
    """Transfer from ``fam1`` to ``fam2``: ``r_n = b2_n / b1_n``, so ``theta(B1) = B2``."""
    return TransferOperator(lambda n: fam2.bk(n) / fam1.bk(n), label=f"{fam1.label}->{fam2.label}")


def hypergeometric_transfer(gammas: Sequence, deltas: Sequence) -> TransferOperator:
    """``r_n = prod (gamma_i)_n / prod (delta_i)_n``."""
    gammas = [to_scalar(g) for g in gammas]
    deltas = [to_scalar(d) for d in deltas]
    if len(gammas) != len(deltas):
        raise ParameterError("hypergeometric transfer needs as many gammas as deltas")
    for d in deltas:
        if d.denominator == 1 and d <= 0:
            raise PoleError(f"pole in denominator parameter {d}")

    def ratio(n: int) -> Fraction:
        out = ONE
        for g, d in zip(gammas, deltas):
            out *= pochhammer(g, n) / pochhammer(d, n)
        return out

    return TransferOperator(ratio, label="hypergeometric")


def transfer_apply(theta: TransferOperator, p: Polynomial) -> Polynomial:
    return Polynomial(tuple(c * theta.r(n) if c else ZERO for n, c in enumerate(p.coeffs)))


def transfer_series(theta: TransferOperator, s: PowerSeries) -> PowerSeries:
    """``theta`` on a truncated series, coefficientwise."""
    return PowerSeries(tuple(c * theta.r(n) if c else ZERO for n, c in enumerate(s.coeffs)))


def b_series(fam: BrenkeFamily, order: int) -> PowerSeries:
    """Truncation of ``B`` itself."""
    return PowerSeries(tuple(fam.bk(k) for k in range(order + 1)))


def xd_phi(theta: TransferOperator, k: int) -> Fraction:
    """``phi_k = (-1)**k sum_{m<=k} (-k)_m / m! r_m``."""
    total = ZERO
    term = ONE  # (-k)_m / m!
    for m in range(k + 1):
        if m:
            term = term * (m - 1 - k) / m
        total += term * theta.r(m)
    return total if k % 2 == 0 else -total


def xd_reconstruct(theta: TransferOperator, n: int) -> Fraction:
    """``sum_k phi_k / k! X**k D**k`` applied to ``x**n``, read off at ``x**n``.

    ``X**k D**k x**n = n!/(n-k)! x**n``, hence ``sum_k C(n, k) phi_k``; must
    reproduce ``r_n``.
    """
    return sum((binomial(n, k) * xd_phi(theta, k) for k in range(n + 1)), ZERO)


def xd_phi_hypergeometric(gammas: Sequence, deltas: Sequence, k: int) -> Fraction:
    """``phi_k`` for a hypergeometric transfer as ``(-1)**k p+1Fp(-k, gammas; deltas; 1)``."""
    value = hypergeometric_terminating([-k, *gammas], list(deltas), 1)
    return value if k % 2 == 0 else -value


def xd_phi_closed_delta(gamma, delta, k: int) -> Fraction:
    """One-parameter closed form ``(-1)**k (delta-gamma)_k / (delta)_k`` (Chu-Vandermonde)."""
    v = pochhammer(to_scalar(delta) - to_scalar(gamma), k) / pochhammer(delta, k)
    return v if k % 2 == 0 else -v


def xd_phi_closed_gamma(gamma, delta, k: int) -> Fraction:
    """Variant ``(-1)**k (delta-gamma)_k / (gamma)_k`` with gamma in the denominator."""
    v = pochhammer(to_scalar(delta) - to_scalar(gamma), k) / pochhammer(gamma, k)
    return v if k % 2 == 0 else -v


def compare_phi_closed_forms(gamma, delta, k_max: int) -> dict:
    """Test both one-parameter closed forms against the defining sum for ``k <= k_max``.

    Returns ``{"delta_denominator": bool, "gamma_denominator": bool,
    "first_gamma_mismatch": k or None}``.
    """
    theta = hypergeometric_transfer([gamma], [delta])
    delta_ok = True
    gamma_ok = True
    first = None
    for k in range(k_max + 1):
        direct = xd_phi(theta, k)
        if direct != xd_phi_closed_delta(gamma, delta, k):
            delta_ok = False
        if direct != xd_phi_closed_gamma(gamma, delta, k):
            gamma_ok = False
            if first is None:
                first = k
    return {"delta_denominator": delta_ok, "gamma_denominator": gamma_ok, "first_gamma_mismatch": first}


def families_share_b(fam1: BrenkeFamily, fam2: BrenkeFamily, upto: int) -> bool:
    return all(fam1.bk(k) == fam2.bk(k) for k in range(upto + 1))


def monomial_family(order: int) -> BrenkeFamily:
    """``A = 1, b_k = 1``; ``P_n = n! x**n``."""
    return BrenkeFamily(PowerSeries.one(order), lambda k: ONE, label="monomial")


def appell_family(a: PowerSeries | Iterable, label: str = "appell") -> BrenkeFamily:
    """Appell family ``A(t) e^{xt}``: ``b_k = 1/k!``."""
    if not isinstance(a, PowerSeries):
        a = PowerSeries.from_coeffs(a)
    return BrenkeFamily(a, lambda k: Fraction(1, math.factorial(k)), label=label)
