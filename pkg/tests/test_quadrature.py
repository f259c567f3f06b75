import math
from fractions import Fraction

import pytest

from brenke.brenke_core import Polynomial
from brenke.errors import ParameterError, QuadratureError
from brenke.quadrature import (
    beta_function,
    beta_ratio_quadrature,
    check_integrals,
    dunkl_ratio_exact,
    exp_mu_truncation,
    gghps_cc_integral,
    integrate_endpoint_singular,
    intertwining_integral,
    kernel_forms_agree,
    theta_exact_beta,
    theta_integral_beta,
    theta_integral_dunkl,
)
from brenke.scalar_series import pochhammer
from brenke.special_families import gamma_mu, gghps_connection_closed

F = Fraction
P = Polynomial


def test_endpoint_examples():
    assert integrate_endpoint_singular(lambda t: 1.0, (-0.5, 0.0)) == pytest.approx(2.0, abs=1e-10)
    assert integrate_endpoint_singular(lambda t: t * t, (0, 0), (-1.0, 1.0)) == pytest.approx(2 / 3, abs=1e-12)


@pytest.mark.parametrize("g,d", [(F(1, 2), F(3, 2)), (F(1, 3), F(2)), (F(3, 4), F(5, 2))])
def test_beta_integral(g, d):
    val = integrate_endpoint_singular(lambda t: 1.0, (float(g) - 1, float(d - g) - 1))
    assert val == pytest.approx(beta_function(g, d - g), abs=1e-10)
    # B(g, 1) = 1/g exactly
    assert beta_function(g, 1) == pytest.approx(1 / float(g), abs=1e-13)


def test_endpoint_errors():
    with pytest.raises(ParameterError, match="non-integrable"):
        integrate_endpoint_singular(lambda t: 1.0, (-1.0, 0.0))
    with pytest.raises(QuadratureError) as info:
        integrate_endpoint_singular(lambda t: math.sin(1 / (t + 1e-9)), (0, 0), tol=1e-14, limit=5)
    assert info.value.estimate is not None


def test_theta_beta_examples():
    assert theta_integral_beta(F(1, 3), 1, P((1,)), 0.7) == pytest.approx(1.0, abs=1e-10)
    for n in range(8):
        assert theta_integral_beta(1, 2, P.monomial(n), 1.0) == pytest.approx(1 / (n + 1), abs=1e-10)
    g, d = F(1, 2), F(3, 2)
    expected = 1 + pochhammer(g, 2) / pochhammer(d, 2) * F(9, 4)
    assert theta_exact_beta(g, d, P((1, 0, 1)), F(3, 2)) == expected
    assert theta_integral_beta(g, d, P((1, 0, 1)), 1.5) == pytest.approx(float(expected), abs=1e-10)
    with pytest.raises(ParameterError):
        theta_integral_beta(2, 1, P((1,)), 1.0)


def test_theta_dunkl_examples():
    assert theta_integral_dunkl(F(1, 4), 1, P((1,)), 0.3) == pytest.approx(1.0, abs=1e-10)
    # gamma_0(2) / gamma_{1/2}(2) = 2/4
    assert dunkl_ratio_exact(0, F(1, 2), P.monomial(2), 1) == F(1, 2)
    assert theta_integral_dunkl(0, F(1, 2), P.monomial(2), 1.0) == pytest.approx(0.5, abs=1e-10)
    assert theta_integral_dunkl(0, 1, P.monomial(1), 1.0) == pytest.approx(1 / 3, abs=1e-10)
    with pytest.raises(ParameterError):
        theta_integral_dunkl(1, 1, P((1,)), 1.0)


def test_intertwining_matches_dunkl_transfer():
    p = P((1, -2, 3, 0, 5))
    for mu in (F(1, 2), F(3, 2)):
        exact = dunkl_ratio_exact(0, mu, p, F(4, 5))
        assert intertwining_integral(mu, p, 0.8) == pytest.approx(float(exact), abs=1e-10)


def test_beta_ratio():
    for n in range(6):
        exact = gamma_mu(F(1, 2), n) / gamma_mu(F(3, 2), n)
        if n % 2 == 0:
            assert beta_ratio_quadrature(F(1, 2), F(3, 2), n) == pytest.approx(float(exact), abs=1e-10)


def test_kernel_forms():
    assert kernel_forms_agree(F(1, 2), F(3, 2), [-0.9, -0.2, 0.0, 0.5, 0.99])
    with pytest.raises(ParameterError):
        kernel_forms_agree(0, 1, [1.0])


def test_gghps_cc_integral():
    for n, i in ((2, 1), (5, 2), (6, 0)):
        exact = gghps_connection_closed(n, i, -1, 2, 0, 1, 1)
        assert gghps_cc_integral(n, i, -1, 2, 0, 1, 1) == pytest.approx(float(exact), abs=1e-9)
    exact = gghps_connection_closed(2, 1, -1, -1, 0, 1, 1)
    assert gghps_cc_integral(2, 1, -1, -1, 0, 1, 1) == pytest.approx(float(exact), abs=1e-10)
    # i = 0 is the moment ratio
    n = 4
    assert gghps_cc_integral(n, 0, 3, 3, F(1, 2), 1, 1) == pytest.approx(
        float(gamma_mu(F(1, 2), n) / gamma_mu(1, n)), abs=1e-10
    )
    with pytest.raises(ParameterError):
        gghps_cc_integral(2, 1, 1, 1, 1, 1, 1)


def test_exp_mu_truncation():
    assert exp_mu_truncation(0, 3) == P((1, 1, F(1, 2), F(1, 6)))


def test_check_integrals_report():
    reports = check_integrals(4)
    assert reports and all(r["pass"] for r in reports)
    assert set(reports[0]) == {"test", "exact", "numeric", "abs_err", "pass"}
