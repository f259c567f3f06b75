from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from brenke.brenke_core import Polynomial, brenke_poly, monomial_family
from brenke.errors import ParameterError
from brenke.expansion import connection_explicit, identity_table, linearization_explicit
from brenke.oracle import BasisSet, expand_in_basis, oracle_connection, oracle_linearization, oracle_product_expansion
from brenke.special_families import generalized_hermite_family, hermite_family

from conftest import rationals

P = Polynomial
H = hermite_family(20)
HB = BasisSet.from_family(H, 6)


def test_unit_vectors():
    for k in range(7):
        c = expand_in_basis(HB.polys[k], HB)
        assert c == [1 if m == k else 0 for m in range(7)]


def test_examples():
    assert expand_in_basis(P((0, 0, 4)), HB)[:3] == [2, 0, 1]
    assert expand_in_basis(P(), HB) == [0] * 7


def test_degenerate_basis_and_overflow():
    with pytest.raises(ParameterError, match="degenerate basis"):
        BasisSet((P((1,)), P((1,))))
    with pytest.raises(ParameterError, match="degree overflow"):
        expand_in_basis(P.monomial(7), HB)


@given(st.lists(rationals(), min_size=1, max_size=7))
def test_expansion_reconstructs(coeffs):
    p = P(tuple(coeffs))
    c = expand_in_basis(p, HB)
    assert sum((HB.polys[m] * v for m, v in enumerate(c)), P()) == p


def test_oracle_connection():
    assert oracle_connection(H, H, 10) == identity_table(10)
    M = monomial_family(20)
    assert oracle_connection(H, M, 2).rows[2] == (-2, 0, 2)
    G = generalized_hermite_family(Fraction(1, 2), 20)
    assert oracle_connection(G, H, 14) == connection_explicit(G, H, 14)


def test_oracle_linearization():
    assert oracle_linearization(H, H, H, 0, 0).entries == (1,)
    assert oracle_linearization(H, H, H, 1, 1).entries == (2, 0, 1)
    G = generalized_hermite_family(Fraction(3, 2), 20)
    assert oracle_linearization(G, H, G, 4, 3) == linearization_explicit(G, H, G, 4, 3)


def test_product_expansion():
    h1 = brenke_poly(H, 1)
    c = oracle_product_expansion([h1, h1, h1], BasisSet.from_family(H, 3))
    # H_1**3 = H_3 + 6 H_1
    assert c == [0, 6, 0, 1]
