"""Brute-force basis change by triangular back-substitution.

Independent of every generating-function argument: polynomials are built with
:func:`brenke_poly`, multiplied exactly, and re-expanded by elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .brenke_core import BrenkeFamily, Polynomial, brenke_poly
from .errors import ParameterError
from .expansion import ConnectionTable, LinearizationTable
from .scalar_series import ZERO


@dataclass(frozen=True)
class BasisSet:
    """Graded basis: ``polys[m]`` has degree exactly ``m``."""

    polys: tuple

    def __post_init__(self):
        polys = tuple(self.polys)
        for m, p in enumerate(polys):
            if p.degree != m:
                raise ParameterError(f"degenerate basis: element {m} has degree {p.degree}")
        object.__setattr__(self, "polys", polys)

    @property
    def n_max(self) -> int:
        return len(self.polys) - 1

    @classmethod
    def from_family(cls, fam: BrenkeFamily, n_max: int) -> "BasisSet":
        return cls(tuple(brenke_poly(fam, n) for n in range(n_max + 1)))


def expand_in_basis(target: Polynomial, basis: BasisSet) -> list:
    """Exact ``c`` with ``target = sum_m c[m] basis.polys[m]``, length ``basis.n_max + 1``."""
    if target.degree > basis.n_max:
        raise ParameterError(f"degree overflow: target degree {target.degree} exceeds basis n_max {basis.n_max}")
    rest = list(target.coeffs) + [ZERO] * (basis.n_max + 1 - len(target.coeffs))
    c = [ZERO] * (basis.n_max + 1)
    for m in range(target.degree, -1, -1):
        if rest[m] == 0:
            continue
        p = basis.polys[m]
        q = rest[m] / p.leading
        c[m] = q
        for k, v in enumerate(p.coeffs):
            if v:
                rest[k] -= q * v
    return c


def oracle_connection(src: BrenkeFamily, dst: BrenkeFamily, n_max: int) -> ConnectionTable:
    basis = BasisSet.from_family(dst, n_max)
    rows = []
    for n in range(n_max + 1):
        c = expand_in_basis(brenke_poly(src, n), basis)
        rows.append(tuple(c[: n + 1]))
    return ConnectionTable(tuple(rows))


def oracle_linearization(
    basis: BrenkeFamily, f2: BrenkeFamily, f3: BrenkeFamily, i: int, j: int
) -> LinearizationTable:
    product = brenke_poly(f2, i) * brenke_poly(f3, j)
    c = expand_in_basis(product, BasisSet.from_family(basis, i + j))
    return LinearizationTable(i, j, tuple(c))


def oracle_product_expansion(factors: Sequence[Polynomial], basis: BasisSet) -> list:
    """Expand an arbitrary product of polynomials in ``basis``."""
    prod = Polynomial((Fraction(1),))
    for p in factors:
        prod = prod * p
    return expand_in_basis(prod, basis)
