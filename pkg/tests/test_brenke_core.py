import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from brenke.brenke_core import (
    BrenkeFamily,
    Polynomial,
    appell_family,
    b_series,
    brenke_poly,
    compare_phi_closed_forms,
    hypergeometric_transfer,
    identity_transfer,
    inversion_coeffs,
    linear_combination,
    lowering_apply,
    monomial_family,
    table_generator,
    transfer_apply,
    transfer_between,
    transfer_series,
    xd_phi,
    xd_phi_closed_delta,
    xd_phi_closed_gamma,
    xd_phi_hypergeometric,
    xd_reconstruct,
)
from brenke.errors import InsufficientOrderError, ParameterError, PoleError
from brenke.scalar_series import PowerSeries, ps_exp_monomial
from brenke.special_families import dunkl_transfer, gamma_mu, hermite_family

from conftest import rationals, series_coeffs

F = Fraction
P = Polynomial


def test_polynomial_basics():
    p = P((1, 0, 3, 0, 0))
    assert p.degree == 2 and p.leading == 3
    assert P().degree == -1
    assert (p * P((0, 1))).coeffs == (0, 1, 0, 3)
    assert p(F(1, 2)) == F(7, 4)
    assert p(0.5) == pytest.approx(1.75)
    assert p.scale_arg(2) == P((1, 0, 12))
    assert linear_combination([2, -1], [P((1,)), P((0, 1))]) == P((2, -1))


def test_family_rejects_bad_data():
    with pytest.raises(ParameterError):
        BrenkeFamily(PowerSeries.from_coeffs([0, 1]), lambda k: F(1))
    fam = BrenkeFamily(PowerSeries.one(4), lambda k: F(0) if k == 2 else F(1))
    with pytest.raises(ParameterError):
        fam.bk(2)


def test_hermite_poly():
    H = hermite_family(8)
    assert brenke_poly(H, 2) == P((-2, 0, 4))
    assert brenke_poly(H, 3) == P((0, -12, 0, 8))


def test_poly_degree_zero_and_monomial():
    fam = BrenkeFamily(PowerSeries.from_coeffs([3, 1]), lambda k: F(2) ** k)
    assert brenke_poly(fam, 0) == P((3,))
    M = monomial_family(8)
    assert brenke_poly(M, 5) == P.monomial(5, math.factorial(5))


def test_poly_insufficient_order():
    with pytest.raises(InsufficientOrderError, match="insufficient order"):
        brenke_poly(hermite_family(3), 4)
    fam = BrenkeFamily(PowerSeries.one(10), table_generator([1, 1, 1]))
    with pytest.raises(InsufficientOrderError):
        brenke_poly(fam, 4)


def test_inversion_examples():
    H = hermite_family(8)
    v = inversion_coeffs(H, 2)
    assert v == [1, 0, 1]
    # 2 x**2 = P_0 + P_2 / 2, i.e. x**2 = H_2/4 + H_0/2
    recon = sum((brenke_poly(H, m) * (v[m] / math.factorial(m)) for m in range(3)), P())
    assert recon == P((0, 0, 2))
    assert inversion_coeffs(H, 0) == [1]
    assert inversion_coeffs(monomial_family(6), 4) == [0, 0, 0, 0, 1]


@given(series_coeffs(min_size=7, max_size=7).filter(lambda c: c[0] != 0), st.integers(0, 6))
def test_inversion_reconstructs(a, n):
    fam = BrenkeFamily(PowerSeries.from_coeffs(a), lambda k: F(k + 2, k + 1))
    v = inversion_coeffs(fam, n)
    recon = sum((brenke_poly(fam, m) * (v[m] / math.factorial(m)) for m in range(n + 1)), P())
    assert recon == P.monomial(n, fam.bk(n))


def test_lowering_examples():
    E = appell_family(ps_exp_monomial(1, 1, 8))
    assert lowering_apply(E, P.monomial(4)) == P.monomial(3, 4)
    assert lowering_apply(E, P((5,))) == P()


@given(series_coeffs(min_size=9, max_size=9).filter(lambda c: c[0] != 0), st.integers(0, 7))
def test_lowering_property(a, n):
    fam = BrenkeFamily(PowerSeries.from_coeffs(a), lambda k: F(1, (k + 1) ** 2))
    assert lowering_apply(fam, brenke_poly(fam, n + 1)) == brenke_poly(fam, n) * (n + 1)


def test_transfer_examples():
    p = P((1, 2, 3))
    assert transfer_apply(identity_transfer(), p) == p
    theta = transfer_between(monomial_family(5), appell_family(PowerSeries.one(5)))
    assert transfer_apply(theta, P.monomial(3)) == P.monomial(3, F(1, 6))
    H, G = hermite_family(12), appell_family(PowerSeries.one(12))
    assert transfer_series(transfer_between(H, G), b_series(H, 12)) == b_series(G, 12)
    assert theta.inverse().r(3) == 6


def test_phi_examples():
    ident = identity_transfer()
    assert [xd_phi(ident, k) for k in range(5)] == [1, 0, 0, 0, 0]
    theta = hypergeometric_transfer([1], [2])
    assert [xd_phi(theta, k) for k in range(6)] == [F((-1) ** k, k + 1) for k in range(6)]
    assert xd_reconstruct(theta, 2) == F(1, 3)
    assert xd_phi_hypergeometric([1], [2], 2) == F(1, 3)
    assert xd_phi_hypergeometric([F(3, 4)], [F(3, 4)], 3) == 0


def test_reconstruct_dunkl():
    theta = dunkl_transfer(0, F(3, 2))
    for n in range(31):
        assert xd_reconstruct(theta, n) == gamma_mu(0, n) / gamma_mu(F(3, 2), n)


@given(rationals().filter(lambda g: g > 0), rationals().filter(lambda d: d > 0), st.integers(0, 15))
def test_phi_closed_form_delta(gamma, delta, k):
    theta = hypergeometric_transfer([gamma], [delta])
    assert xd_phi(theta, k) == xd_phi_closed_delta(gamma, delta, k)
    assert xd_phi(theta, k) == xd_phi_hypergeometric([gamma], [delta], k)


def test_phi_gamma_denominator_variant_is_wrong():
    report = compare_phi_closed_forms(1, 2, 10)
    assert report == {"delta_denominator": True, "gamma_denominator": False, "first_gamma_mismatch": 1}
    assert xd_phi_closed_gamma(1, 2, 3) == -1


def test_hypergeometric_transfer_pole():
    with pytest.raises(PoleError, match="pole in denominator"):
        hypergeometric_transfer([1], [0])
