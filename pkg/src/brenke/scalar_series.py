"""Exact scalars, truncated formal power series and terminating hypergeometric sums.

Every quantity is an exact :class:`fractions.Fraction`. A :class:`PowerSeries`
carries its truncation order explicitly: coefficients of ``t**0 .. t**order``
are known, nothing beyond is ever reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .errors import (
    InsufficientOrderError,
    NonTerminatingError,
    NotInvertibleError,
    ParameterError,
    PoleError,
)

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def to_scalar(value) -> Fraction:
    """Convert ``value`` to an exact rational.

    Accepts ints, Fractions and strings such as ``"-3/4"`` or ``"2"``.
    Floats are refused: an exact pipeline must not silently round.
    """
    if isinstance(value, bool):
        raise ParameterError(f"not a rational scalar: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParameterError(f"malformed rational {value!r}") from exc
    raise ParameterError(f"not a rational scalar: {value!r}")


def format_scalar(value: Fraction) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def is_nonpositive_integer(value: Fraction) -> bool:
    return value.denominator == 1 and value <= 0


@dataclass(frozen=True)
class PowerSeries:
    """Dense truncated power series ``sum_{n<=order} coeffs[n] t**n``."""

    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ParameterError("a power series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(to_scalar(c) for c in self.coeffs))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, order: int | None = None) -> "PowerSeries":
        """Build a series, zero-padding (or refusing to truncate) up to ``order``."""
        coeffs = [to_scalar(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ParameterError("order must be nonnegative")
        if len(coeffs) > order + 1:
            coeffs = coeffs[: order + 1]
        coeffs.extend([ZERO] * (order + 1 - len(coeffs)))
        return cls(tuple(coeffs))

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls.from_coeffs([ONE], order)

    @classmethod
    def monomial(cls, m: int, order: int, coeff=ONE) -> "PowerSeries":
        """``coeff * t**m`` truncated at ``order``."""
        coeffs = [ZERO] * (order + 1)
        if m <= order:
            coeffs[m] = to_scalar(coeff)
        return cls(tuple(coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            return ZERO
        if n > self.order:
            raise InsufficientOrderError(
                f"insufficient order: coefficient {n} requested from a series valid to order {self.order}"
            )
        return self.coeffs[n]

    def truncate(self, order: int) -> "PowerSeries":
        _require_order(order, self.order)
        return PowerSeries(self.coeffs[: order + 1])

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [format_scalar(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "PowerSeries":
        return cls.from_coeffs(data["coeffs"], int(data["order"]))


def _require_order(order: int, available: int) -> None:
    if order < 0:
        raise ParameterError("order must be nonnegative")
    if order > available:
        raise InsufficientOrderError(
            f"insufficient order: requested {order}, series valid only to order {available}"
        )


def ps_add(s1: PowerSeries, s2: PowerSeries) -> PowerSeries:
    order = min(s1.order, s2.order)
    return PowerSeries(tuple(s1.coeffs[n] + s2.coeffs[n] for n in range(order + 1)))


def ps_sub(s1: PowerSeries, s2: PowerSeries) -> PowerSeries:
    order = min(s1.order, s2.order)
    return PowerSeries(tuple(s1.coeffs[n] - s2.coeffs[n] for n in range(order + 1)))


def ps_mul(s1: PowerSeries, s2: PowerSeries, order: int | None = None) -> PowerSeries:
    """Cauchy product truncated at ``order`` (default: the common validity order)."""
    available = min(s1.order, s2.order)
    if order is None:
        order = available
    _require_order(order, available)
    a, b = s1.coeffs, s2.coeffs
    out = []
    for n in range(order + 1):
        acc = ZERO
        for k in range(n + 1):
            if a[k] and b[n - k]:
                acc += a[k] * b[n - k]
        out.append(acc)
    return PowerSeries(tuple(out))


def ps_reciprocal(s: PowerSeries, order: int | None = None) -> PowerSeries:
    """Series ``r`` with ``s * r = 1`` up to ``order``."""
    if order is None:
        order = s.order
    _require_order(order, s.order)
    a = s.coeffs
    if a[0] == 0:
        raise NotInvertibleError("not invertible: zero constant term")
    inv0 = 1 / a[0]
    r = [inv0]
    for n in range(1, order + 1):
        acc = ZERO
        for k in range(1, n + 1):
            if a[k]:
                acc += a[k] * r[n - k]
        r.append(-acc * inv0)
    return PowerSeries(tuple(r))


def ps_scale_arg(s: PowerSeries, a) -> PowerSeries:
    """Coefficients of ``s(a t)``."""
    a = to_scalar(a)
    return PowerSeries(tuple(c * a**n for n, c in enumerate(s.coeffs)))


def ps_shift(s: PowerSeries, m: int, order: int | None = None) -> PowerSeries:
    """``t**m * s(t)``; valid to ``s.order + m``, truncated at ``order``."""
    available = s.order + m
    if order is None:
        order = available
    _require_order(order, available)
    coeffs = [ZERO] * m + list(s.coeffs)
    return PowerSeries(tuple(coeffs[: order + 1]))


def ps_exp_monomial(c, p: int, order: int) -> PowerSeries:
    """Truncation of ``exp(c t**p)``."""
    c = to_scalar(c)
    if p < 1:
        raise ParameterError("exponent p must be a positive integer")
    if order < 0:
        raise ParameterError("order must be nonnegative")
    coeffs = [ZERO] * (order + 1)
    term = ONE
    for k in range(order // p + 1):
        if k:
            term = term * c / k
        coeffs[k * p] = term
    return PowerSeries(tuple(coeffs))


def pochhammer(alpha, n: int) -> Fraction:
    """Rising factorial ``alpha (alpha+1) ... (alpha+n-1)``."""
    alpha = to_scalar(alpha)
    if n < 0:
        raise ParameterError("pochhammer index must be nonnegative")
    out = ONE
    for j in range(n):
        out *= alpha + j
    return out


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def hypergeometric_terminating(numer: Sequence, denom: Sequence, x) -> Fraction:
    """Exact value of a terminating ``pFq(numer; denom; x)``.

    The sum stops at ``K = -alpha`` for the largest nonpositive-integer
    numerator parameter ``alpha``.
    """
    numer = [to_scalar(a) for a in numer]
    denom = [to_scalar(b) for b in denom]
    x = to_scalar(x)
    stops = [-a for a in numer if is_nonpositive_integer(a)]
    if not stops:
        raise NonTerminatingError("series does not terminate: no nonpositive-integer numerator parameter")
    last = int(min(stops))
    for b in denom:
        if is_nonpositive_integer(b) and -b < last:
            raise PoleError(f"pole in denominator parameter {format_scalar(b)}")
    total = ONE
    term = ONE
    for k in range(last):
        for a in numer:
            term *= a + k
        for b in denom:
            term /= b + k
        term = term * x / (k + 1)
        total += term
    return total
