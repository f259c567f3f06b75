import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from brenke.errors import InsufficientOrderError, NonTerminatingError, NotInvertibleError, ParameterError, PoleError
from brenke.scalar_series import (
    PowerSeries,
    format_scalar,
    hypergeometric_terminating,
    pochhammer,
    ps_add,
    ps_exp_monomial,
    ps_mul,
    ps_reciprocal,
    ps_scale_arg,
    ps_shift,
    ps_sub,
    to_scalar,
)

from conftest import rationals, series_coeffs

F = Fraction


def coeffs(xs):
    return [F(x) for x in xs]


def test_to_scalar_accepts_exact_inputs():
    assert to_scalar("-3/4") == F(-3, 4)
    assert to_scalar(5) == 5
    assert to_scalar(F(1, 3)) == F(1, 3)


@pytest.mark.parametrize("bad", [0.5, True, "abc", "1/0", None])
def test_to_scalar_rejects(bad):
    with pytest.raises(ParameterError):
        to_scalar(bad)


def test_format_scalar():
    assert format_scalar(F(4, 2)) == "2"
    assert format_scalar(F(-1, 3)) == "-1/3"


def test_add_examples():
    s = ps_add(PowerSeries.from_coeffs([1, 1]), PowerSeries.from_coeffs([1, -1]))
    assert list(s.coeffs) == [2, 0]
    assert s.order == 1
    e = ps_add(ps_exp_monomial(1, 1, 4), ps_exp_monomial(-1, 1, 4))
    assert list(e.coeffs) == coeffs([2, 0, 1, 0, F(1, 12)])


def test_mul_examples():
    assert list(ps_mul(PowerSeries.from_coeffs([1, 1, 0]), PowerSeries.from_coeffs([1, -1, 0])).coeffs) == [1, 0, -1]
    one = ps_mul(ps_exp_monomial(-1, 2, 10), ps_exp_monomial(1, 2, 10))
    assert one == PowerSeries.one(10)
    e2 = ps_mul(ps_exp_monomial(1, 1, 3), ps_exp_monomial(1, 1, 3))
    assert list(e2.coeffs) == coeffs([1, 2, 2, F(4, 3)])


def test_mul_beyond_order_raises():
    with pytest.raises(InsufficientOrderError, match="insufficient order"):
        ps_mul(PowerSeries.from_coeffs([1, 1]), PowerSeries.from_coeffs([1, 1, 1]), order=2)


def test_reciprocal_examples():
    r = ps_reciprocal(ps_exp_monomial(-1, 2, 6), 6)
    assert list(r.coeffs) == coeffs([1, 0, 1, 0, F(1, 2), 0, F(1, 6)])
    assert ps_reciprocal(PowerSeries.one(3)) == PowerSeries.one(3)
    assert list(ps_reciprocal(PowerSeries.from_coeffs([1, -1, 0, 0, 0]), 4).coeffs) == [1] * 5
    with pytest.raises(NotInvertibleError, match="not invertible"):
        ps_reciprocal(PowerSeries.from_coeffs([0, 1]))


def test_scale_and_exp_examples():
    assert ps_scale_arg(ps_exp_monomial(-1, 2, 8), 2) == ps_exp_monomial(-4, 2, 8)
    s = PowerSeries.from_coeffs([1, 1, 1])
    assert ps_scale_arg(s, 1) == s
    assert list(ps_scale_arg(s, F(1, 2)).coeffs) == coeffs([1, F(1, 2), F(1, 4)])
    assert list(ps_exp_monomial(-1, 2, 4).coeffs) == coeffs([1, 0, -1, 0, F(1, 2)])
    assert ps_exp_monomial(0, 3, 5) == PowerSeries.one(5)
    assert list(ps_exp_monomial(1, 3, 6).coeffs) == coeffs([1, 0, 0, 1, 0, 0, F(1, 2)])


def test_shift_and_getitem():
    s = ps_shift(PowerSeries.from_coeffs([1, 2]), 2)
    assert list(s.coeffs) == [0, 0, 1, 2]
    assert s[-1] == 0
    with pytest.raises(InsufficientOrderError):
        s[4]


def test_json_round_trip():
    s = PowerSeries.from_coeffs([F(1, 3), -2, 0], 2)
    assert PowerSeries.from_json(s.to_json()) == s
    assert s.to_json() == {"order": 2, "coeffs": ["1/3", "-2", "0"]}


@given(series_coeffs(), series_coeffs())
def test_add_sub_inverse(a, b):
    s1, s2 = PowerSeries.from_coeffs(a), PowerSeries.from_coeffs(b)
    n = min(s1.order, s2.order)
    assert ps_sub(ps_add(s1, s2), s2) == s1.truncate(n)


@given(series_coeffs(), series_coeffs(), series_coeffs())
def test_mul_associative_commutative(a, b, c):
    s1, s2, s3 = (PowerSeries.from_coeffs(x) for x in (a, b, c))
    assert ps_mul(s1, s2) == ps_mul(s2, s1)
    assert ps_mul(ps_mul(s1, s2), s3) == ps_mul(s1, ps_mul(s2, s3))


@given(rationals().filter(lambda x: x != 0), series_coeffs(max_size=7))
def test_reciprocal_is_inverse(a0, rest):
    s = PowerSeries.from_coeffs([a0, *rest])
    assert ps_mul(s, ps_reciprocal(s)) == PowerSeries.one(s.order)


def test_pochhammer_examples():
    assert all(pochhammer(1, k) == math.factorial(k) for k in range(8))
    assert pochhammer(F(7, 3), 0) == 1
    assert pochhammer(F(1, 2), 2) == F(3, 4)
    with pytest.raises(ParameterError):
        pochhammer(1, -1)


def test_hypergeometric_examples():
    assert hypergeometric_terminating([-3, 1], [2], 1) == F(1, 4)
    assert hypergeometric_terminating([-4, F(1, 2)], [F(3, 2)], 0) == 1
    g, d = F(2, 3), F(5, 7)
    assert hypergeometric_terminating([-1, g], [d], 1) == 1 - g / d


def test_hypergeometric_errors():
    with pytest.raises(NonTerminatingError, match="does not terminate"):
        hypergeometric_terminating([F(1, 2), 1], [2], 1)
    with pytest.raises(PoleError, match="pole in denominator"):
        hypergeometric_terminating([-3, 1], [-1], 1)


@given(st.integers(0, 12), rationals(), rationals().filter(lambda x: x > 0))
def test_chu_vandermonde(k, gamma, delta):
    lhs = hypergeometric_terminating([-k, gamma], [delta], 1)
    assert lhs == pochhammer(delta - gamma, k) / pochhammer(delta, k)
