import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from brenke.brenke_core import BrenkeFamily, Polynomial, appell_family, brenke_poly, monomial_family
from brenke.errors import InsufficientOrderError, ParameterError
from brenke.expansion import (
    ConnectionTable,
    LinearizationTable,
    addition_check,
    addition_coeffs,
    carlitz_gf,
    connection_explicit,
    connection_gf,
    connection_gf_table,
    connection_same_B,
    convolution_check,
    duplication_coeffs,
    identity_table,
    inversion_table,
    linearization_explicit,
    linearization_gf_all,
    linearization_gf_table,
    lowering_consistency,
    translate_apply,
)
from brenke.scalar_series import PowerSeries, ps_exp_monomial
from brenke.special_families import generalized_hermite_family, gghps_family, hermite_family

from conftest import series_coeffs

F = Fraction
P = Polynomial
H = hermite_family(20)
M = monomial_family(20)


def expand(table_row, polys):
    return sum((polys[m] * c for m, c in enumerate(table_row)), P())


def test_identity_connection():
    for fam in (H, M, gghps_family(2, 3, F(1, 2), 20)):
        assert connection_explicit(fam, fam, 10) == identity_table(10)
        assert connection_gf_table(fam, fam, 10) == identity_table(10)


def test_hermite_in_monomials():
    t = connection_explicit(H, M, 4)
    # P_m = m! x**m, H_2 = 4x**2 - 2
    assert t.rows[2] == (-2, 0, 2)
    for n in range(5):
        assert expand(t.rows[n], [brenke_poly(M, m) for m in range(n + 1)]) == brenke_poly(H, n)


def test_monomials_in_hermite_matches_inversion():
    t = connection_explicit(M, H, 6)
    inv = inversion_table(H, 6)
    for n in range(7):
        assert [t[n, m] for m in range(n + 1)] == [math.factorial(n) * inv[n, m] for m in range(n + 1)]


def test_inversion_table_reconstructs():
    inv = inversion_table(H, 8)
    polys = [brenke_poly(H, m) for m in range(9)]
    for n in range(9):
        assert expand(inv.rows[n], polys) == P.monomial(n)


def test_same_b_examples():
    a1, a2 = ps_exp_monomial(-1, 2, 10), PowerSeries.one(10)
    assert connection_same_B(a1, a1, 6) == identity_table(6)
    assert connection_same_B(a1, a2, 4)[2, 0] == 2
    t = connection_same_B(PowerSeries.one(8), ps_exp_monomial(1, 1, 8), 8)
    assert all(t[n, m] == math.comb(n, m) for n in range(9) for m in range(n + 1))
    # agrees with the generic path on a shared-B pair
    fam2 = BrenkeFamily(a2, H.b)
    assert connection_explicit(fam2, H, 8) == connection_same_B(H.a, a2, 8)


@given(
    series_coeffs(min_size=9, max_size=9).filter(lambda c: c[0] != 0),
    series_coeffs(min_size=9, max_size=9).filter(lambda c: c[0] != 0),
)
def test_explicit_equals_gf_random(a1, a2):
    f1 = BrenkeFamily(PowerSeries.from_coeffs(a1), lambda k: F(1, math.factorial(k) + 1))
    f2 = BrenkeFamily(PowerSeries.from_coeffs(a2), lambda k: F(2**k, k + 1))
    assert connection_explicit(f2, f1, 8) == connection_gf_table(f2, f1, 8)


def test_gf_column_shape():
    col = connection_gf(H, M, 2, 5)
    assert col[:2] == [0, 0] and len(col) == 6


def test_insufficient_order():
    with pytest.raises(InsufficientOrderError, match="insufficient order"):
        connection_explicit(hermite_family(4), M, 6)


def test_transitivity():
    G = generalized_hermite_family(F(1, 2), 20)
    lhs = connection_explicit(H, M, 12).compose(connection_explicit(M, G, 12))
    assert lhs == connection_explicit(H, G, 12)


def test_connection_table_serialization():
    t = connection_explicit(H, M, 3)
    data = json.loads(json.dumps(t.to_json()))
    assert data["kind"] == "connection" and data["n_max"] == 3
    assert ConnectionTable.from_json(data) == t
    assert t.to_csv().splitlines()[:3] == ["n,m,value", "0,0,1", "1,0,0"]
    with pytest.raises(ParameterError):
        ConnectionTable(((1,), (1,)))


def test_linearization_examples():
    L = linearization_explicit(H, H, H, 1, 1)
    assert L.entries == (2, 0, 1)
    assert linearization_gf_table(H, H, H, 1, 1) == L
    ML = linearization_explicit(M, M, M, 2, 3)
    # x**2 * x**3 with P_m = m! x**m: 2! 3! x**5 = (2! 3! / 5!) P_5
    assert list(ML.entries) == [0] * 5 + [F(1, 10)]
    assert linearization_explicit(H, H, H, 0, 0).entries == (1,)
    assert L[5] == 0


def test_linearization_serialization():
    L = linearization_explicit(H, H, H, 2, 1)
    data = L.to_json()
    assert data == {"kind": "linearization", "i": 2, "j": 1, "L": ["0", "4", "0", "1"]}
    assert LinearizationTable.from_json(data) == L
    assert L.to_csv().splitlines()[1] == "2,1,0,0"


def test_linearization_gf_all_matches_explicit():
    G = generalized_hermite_family(F(3, 2), 20)
    E = appell_family(ps_exp_monomial(1, 1, 20))
    tables = linearization_gf_all(G, E, H, 8)
    for (i, j), t in tables.items():
        assert t == linearization_explicit(G, E, H, i, j)


def test_carlitz_matches_explicit():
    a1, a2, a3 = ps_exp_monomial(1, 1, 10), ps_exp_monomial(-1, 2, 10), PowerSeries.from_coeffs([1, 2] + [0] * 9)
    f1, f2, f3 = (appell_family(a) for a in (a1, a2, a3))
    for k in range(9):
        c = carlitz_gf(a1, a2, a3, k, 8)
        for i in range(9):
            for j in range(9 - i):
                assert c[i][j] == linearization_explicit(f1, f2, f3, i, j)[k]


def test_duplication_examples():
    assert duplication_coeffs(H, 1, 8) == identity_table(8)
    t = duplication_coeffs(H, 2, 4)
    assert t.rows[2] == (6, 0, 4)
    A1 = appell_family(PowerSeries.one(10))
    t = duplication_coeffs(A1, 3, 6)
    assert all(t[n, m] == (3**n if m == n else 0) for n in range(7) for m in range(n + 1))
    with pytest.raises(ParameterError, match="duplication undefined"):
        duplication_coeffs(H, 0, 3)


@given(st.sampled_from([F(2), F(1, 2), F(-1), F(-3, 2)]))
def test_duplication_substitution(a):
    fam = gghps_family(2, F(-1, 3), F(1, 2), 20)
    t = duplication_coeffs(fam, a, 10)
    polys = [brenke_poly(fam, m) for m in range(11)]
    for n in range(11):
        assert expand(t.rows[n], polys) == polys[n].scale_arg(a)
    assert t.compose(duplication_coeffs(fam, 1 / a, 10)) == identity_table(10)


def test_addition_examples():
    c = addition_coeffs(H, 5)
    assert c[5] == H.bk(0)
    E = appell_family(ps_exp_monomial(1, 1, 12))
    assert addition_coeffs(E, 6) == [math.comb(6, m) for m in range(7)]
    assert translate_apply(H, brenke_poly(H, 4), 0) == brenke_poly(H, 4)


def test_addition_and_convolution_checks():
    ys = [F(k, 2) for k in range(-6, 7)]
    for fam in (H, M, gghps_family(1, 2, F(1, 2), 20)):
        for n in range(11):
            assert addition_check(fam, n, ys)
            assert convolution_check(fam, n, ys)
    with pytest.raises(ParameterError, match="samples"):
        convolution_check(H, 4, [0, 1])


def test_lowering_consistency_helper():
    assert all(lowering_consistency(H, n) for n in range(15))
