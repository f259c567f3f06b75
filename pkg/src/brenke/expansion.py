"""Connection and linearization coefficients for Brenke families.

Two independent routes are provided for each problem:

* explicit finite sums built from ``a_k``, ``b_k`` and the reciprocal ``1/A``;
* truncated generating-function manipulation (series products, reciprocal,
  diagonal transfers, and for linearization a genuinely bivariate array).

Role convention for connection problems: ``src`` is the family being expanded
(``Q_n``), ``basis`` is the target basis (``P_m``), and
``Q_n = sum_m C_m(n) P_m``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .brenke_core import (
    BrenkeFamily,
    Polynomial,
    brenke_poly,
    lowering_apply,
    series_in_lowering,
    transfer_between,
    transfer_series,
)
from .errors import InsufficientOrderError, ParameterError
from .scalar_series import (
    ONE,
    ZERO,
    PowerSeries,
    binomial,
    format_scalar,
    ps_mul,
    ps_reciprocal,
    ps_scale_arg,
    ps_shift,
    to_scalar,
)


@dataclass(frozen=True)
class ConnectionTable:
    """Lower-triangular ``C_m(n)``, ``0 <= m <= n <= n_max``; ``rows[n][m]``."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(to_scalar(v) for v in row) for row in self.rows)
        for n, row in enumerate(rows):
            if len(row) != n + 1:
                raise ParameterError(f"connection row {n} must have {n + 1} entries, got {len(row)}")
        object.__setattr__(self, "rows", rows)

    @property
    def n_max(self) -> int:
        return len(self.rows) - 1

    def __getitem__(self, nm) -> Fraction:
        n, m = nm
        return self.rows[n][m] if 0 <= m <= n else ZERO

    def compose(self, other: "ConnectionTable") -> "ConnectionTable":
        """``self``: F in G, ``other``: G in H; result: F in H."""
        n_max = min(self.n_max, other.n_max)
        rows = []
        for n in range(n_max + 1):
            row = []
            for l in range(n + 1):
                row.append(sum((self[n, m] * other[m, l] for m in range(l, n + 1)), ZERO))
            rows.append(row)
        return ConnectionTable(tuple(rows))

    def to_json(self) -> dict:
        return {
            "kind": "connection",
            "n_max": self.n_max,
            "entries": [[format_scalar(v) for v in row] for row in self.rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ConnectionTable":
        if data.get("kind") != "connection":
            raise ParameterError("not a connection table")
        table = cls(tuple(tuple(to_scalar(v) for v in row) for row in data["entries"]))
        if table.n_max != int(data["n_max"]):
            raise ParameterError("n_max does not match the number of rows")
        return table

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "m", "value"])
        for n, row in enumerate(self.rows):
            for m, v in enumerate(row):
                w.writerow([n, m, format_scalar(v)])
        return buf.getvalue()


def identity_table(n_max: int) -> ConnectionTable:
    return ConnectionTable(tuple(tuple(ONE if m == n else ZERO for m in range(n + 1)) for n in range(n_max + 1)))


@dataclass(frozen=True)
class LinearizationTable:
    """``R_i S_j = sum_k L[k] P_k``, ``0 <= k <= i + j``."""

    i: int
    j: int
    entries: tuple

    def __post_init__(self):
        entries = tuple(to_scalar(v) for v in self.entries)
        if len(entries) != self.i + self.j + 1:
            raise ParameterError(f"linearization table needs {self.i + self.j + 1} entries")
        object.__setattr__(self, "entries", entries)

    def __getitem__(self, k: int) -> Fraction:
        return self.entries[k] if 0 <= k < len(self.entries) else ZERO

    def to_json(self) -> dict:
        return {
            "kind": "linearization",
            "i": self.i,
            "j": self.j,
            "L": [format_scalar(v) for v in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LinearizationTable":
        if data.get("kind") != "linearization":
            raise ParameterError("not a linearization table")
        return cls(int(data["i"]), int(data["j"]), tuple(data["L"]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "j", "k", "value"])
        for k, v in enumerate(self.entries):
            w.writerow([self.i, self.j, k, format_scalar(v)])
        return buf.getvalue()


def _need(fam: BrenkeFamily, order: int) -> None:
    if fam.order < order:
        raise InsufficientOrderError(
            f"insufficient order: need A valid to order {order}, family {fam.label} has {fam.order}"
        )


# -- connection ------------------------------------------------------------


def connection_explicit(src: BrenkeFamily, basis: BrenkeFamily, n_max: int) -> ConnectionTable:
    """``C_m(n) = n!/m! sum_{k<=n-m} (b2_{n-k}/b1_{n-k}) a2_k ahat1_{n-m-k}``.

    Family 1 is ``basis``, family 2 is ``src``.
    """
    _need(src, n_max)
    _need(basis, n_max)
    ahat = basis.a_hat(n_max)
    ratio = [src.bk(n) / basis.bk(n) for n in range(n_max + 1)]
    rows = []
    for n in range(n_max + 1):
        nf = math.factorial(n)
        row = []
        for m in range(n + 1):
            acc = ZERO
            for k in range(n - m + 1):
                a2 = src.ak(k)
                ah = ahat[n - m - k]
                if a2 and ah:
                    acc += ratio[n - k] * a2 * ah
            row.append(acc * Fraction(nf, math.factorial(m)))
        rows.append(tuple(row))
    return ConnectionTable(tuple(rows))


def connection_gf(src: BrenkeFamily, basis: BrenkeFamily, m: int, n_max: int) -> list:
    """Column ``m`` of the connection table from ``A2(t) theta(t**m / A1(t))``.

    Returns ``[C_m(n) for n in 0..n_max]`` (zero for ``n < m``).
    """
    _need(src, n_max)
    _need(basis, n_max)
    if m > n_max:
        return [ZERO] * (n_max + 1)
    theta = transfer_between(basis, src)
    inner = ps_shift(ps_reciprocal(basis.a.truncate(n_max), n_max - m), m, n_max)
    series = ps_mul(src.a.truncate(n_max), transfer_series(theta, inner), n_max)
    mf = math.factorial(m)
    return [series[n] * Fraction(math.factorial(n), mf) if n >= m else ZERO for n in range(n_max + 1)]


def connection_gf_table(src: BrenkeFamily, basis: BrenkeFamily, n_max: int) -> ConnectionTable:
    cols = [connection_gf(src, basis, m, n_max) for m in range(n_max + 1)]
    return ConnectionTable(tuple(tuple(cols[m][n] for m in range(n + 1)) for n in range(n_max + 1)))


def connection_same_B(a1: PowerSeries, a2: PowerSeries, n_max: int) -> ConnectionTable:
    """Families sharing ``B``: ``C_m(n) = n!/m! [t**(n-m)] A2/A1``."""
    if min(a1.order, a2.order) < n_max:
        raise InsufficientOrderError(f"insufficient order: need both A-series to order {n_max}")
    q = ps_mul(a2.truncate(n_max), ps_reciprocal(a1.truncate(n_max), n_max), n_max)
    rows = []
    for n in range(n_max + 1):
        rows.append(tuple(q[n - m] * math.factorial(n) / math.factorial(m) for m in range(n + 1)))
    return ConnectionTable(tuple(rows))


def inversion_table(fam: BrenkeFamily, n_max: int) -> ConnectionTable:
    """``x**n = sum_m C_m(n) P_m``; ``C_m(n) = ahat_{n-m} / (b_n m!)``."""
    _need(fam, n_max)
    ahat = fam.a_hat(n_max)
    rows = []
    for n in range(n_max + 1):
        rows.append(tuple(ahat[n - m] / (fam.bk(n) * math.factorial(m)) for m in range(n + 1)))
    return ConnectionTable(tuple(rows))


def duplication_coeffs(fam: BrenkeFamily, a, n_max: int) -> ConnectionTable:
    """``P_n(a x) = sum_m n!/m! a**m beta_{n-m} P_m(x)`` with ``A(t)/A(at) = sum beta_k t**k``."""
    a = to_scalar(a)
    if a == 0:
        raise ParameterError("duplication undefined for a = 0")
    _need(fam, n_max)
    A = fam.a.truncate(n_max)
    beta = ps_mul(A, ps_reciprocal(ps_scale_arg(A, a), n_max), n_max)
    rows = []
    for n in range(n_max + 1):
        rows.append(
            tuple(Fraction(math.factorial(n), math.factorial(m)) * a**m * beta[n - m] for m in range(n + 1))
        )
    return ConnectionTable(tuple(rows))


# -- addition / convolution ------------------------------------------------


def addition_coeffs(fam: BrenkeFamily, n: int) -> list:
    """``c[m] = n!/m! b_{n-m}``, the coefficient of ``y**(n-m) P_m(x)`` in ``T_y P_n``."""
    return [Fraction(math.factorial(n), math.factorial(m)) * fam.bk(n - m) for m in range(n + 1)]


def translate_apply(fam: BrenkeFamily, p: Polynomial, y) -> Polynomial:
    """Generalized translation ``B(y D_b) p`` at a fixed rational ``y``."""
    y = to_scalar(y)
    coeffs = [fam.bk(k) * y**k for k in range(p.degree + 1)]
    return series_in_lowering(fam, coeffs, p)


def addition_check(fam: BrenkeFamily, n: int, y_samples: Sequence) -> bool:
    """Compare ``B(y D_b) P_n`` with the addition expansion at each sample ``y``."""
    ys = _distinct_samples(y_samples, n)
    polys = [brenke_poly(fam, m) for m in range(n + 1)]
    c = addition_coeffs(fam, n)
    for y in ys:
        direct = translate_apply(fam, polys[n], y)
        expanded = Polynomial()
        for m in range(n + 1):
            expanded = expanded + polys[m] * (c[m] * y ** (n - m))
        if direct != expanded:
            return False
    return True


def convolution_check(fam: BrenkeFamily, n: int, y_samples: Sequence) -> bool:
    """``A(D_b) T_y P_n(x) = sum_m C(n, m) P_{n-m}(y) P_m(x)`` at each sample ``y``."""
    ys = _distinct_samples(y_samples, n)
    _need(fam, n)
    polys = [brenke_poly(fam, m) for m in range(n + 1)]
    a_coeffs = [fam.ak(k) for k in range(n + 1)]
    for y in ys:
        lhs = series_in_lowering(fam, a_coeffs, translate_apply(fam, polys[n], y))
        rhs = Polynomial()
        for m in range(n + 1):
            rhs = rhs + polys[m] * (binomial(n, m) * polys[n - m](y))
        if lhs != rhs:
            return False
    return True


def _distinct_samples(y_samples: Sequence, n: int) -> list:
    ys = sorted({to_scalar(y) for y in y_samples})
    if len(ys) < n + 1:
        raise ParameterError(f"need at least {n + 1} distinct y samples, got {len(ys)}")
    return ys


# -- linearization ---------------------------------------------------------


def linearization_explicit(
    basis: BrenkeFamily, f2: BrenkeFamily, f3: BrenkeFamily, i: int, j: int
) -> LinearizationTable:
    """``L_ij(k) = i!j!/k! sum_{n<=i, m<=j} b2_n b3_m / b1_{n+m} a2_{i-n} a3_{j-m} ahat1_{n+m-k}``.

    ``ahat1`` with a negative index is zero.
    """
    top = i + j
    _need(f2, i)
    _need(f3, j)
    _need(basis, top)
    ahat = basis.a_hat(top)
    inner = [ZERO] * (top + 1)  # inner[N] = sum over n+m=N of b2 b3 a2 a3
    for n in range(i + 1):
        a2 = f2.ak(i - n)
        if not a2:
            continue
        for m in range(j + 1):
            a3 = f3.ak(j - m)
            if a3:
                inner[n + m] += f2.bk(n) * f3.bk(m) * a2 * a3
    pref = math.factorial(i) * math.factorial(j)
    entries = []
    for k in range(top + 1):
        acc = ZERO
        for N in range(k, top + 1):
            if inner[N] and ahat[N - k]:
                acc += inner[N] / basis.bk(N) * ahat[N - k]
        entries.append(acc * Fraction(pref, math.factorial(k)))
    return LinearizationTable(i, j, tuple(entries))


def _bivariate_zero(order: int) -> list:
    return [[ZERO] * (order - p + 1) for p in range(order + 1)]


def _bivariate_mul_s(series: PowerSeries, table: list, order: int) -> list:
    """Multiply a triangular ``(s, t)`` array by a series in ``s`` alone."""
    out = _bivariate_zero(order)
    for p in range(order + 1):
        for q in range(order - p + 1):
            acc = ZERO
            for r in range(p + 1):
                c = series[r]
                if c and table[p - r][q]:
                    acc += c * table[p - r][q]
            out[p][q] = acc
    return out


def _bivariate_mul_t(series: PowerSeries, table: list, order: int) -> list:
    out = _bivariate_zero(order)
    for p in range(order + 1):
        for q in range(order - p + 1):
            acc = ZERO
            for r in range(q + 1):
                c = series[r]
                if c and table[p][q - r]:
                    acc += c * table[p][q - r]
            out[p][q] = acc
    return out


def linearization_gf(
    basis: BrenkeFamily, f2: BrenkeFamily, f3: BrenkeFamily, k: int, order: int
) -> list:
    """Generating function of ``L_ij(k)`` as a triangular array ``T[i][j]``, ``i + j <= order``.

    Evaluates ``A2(s) A3(t)/k! * theta2_s theta3_t theta1_{s+t}^{-1} ((s+t)**k / A1(s+t))``
    with ``theta_i(u**n) = n! b^(i)_n u**n``, then ``T[i][j] = i! j! [s**i t**j]``.
    """
    _need(basis, order)
    _need(f2, order)
    _need(f3, order)
    out = _bivariate_zero(order)
    if k > order:
        return out
    u = ps_shift(ps_reciprocal(basis.a.truncate(order), order - k), k, order)
    # theta1^{-1} in the single variable u = s + t
    u = PowerSeries(tuple(c / (math.factorial(N) * basis.bk(N)) if c else ZERO for N, c in enumerate(u.coeffs)))
    biv = _bivariate_zero(order)
    for N, c in enumerate(u.coeffs):
        if not c:
            continue
        for l in range(N + 1):
            # (s+t)**N -> s**l t**(N-l), then theta2 on s, theta3 on t
            biv[l][N - l] += (
                c * binomial(N, l) * math.factorial(l) * f2.bk(l) * math.factorial(N - l) * f3.bk(N - l)
            )
    biv = _bivariate_mul_s(f2.a.truncate(order), biv, order)
    biv = _bivariate_mul_t(f3.a.truncate(order), biv, order)
    kf = math.factorial(k)
    for p in range(order + 1):
        for q in range(order - p + 1):
            out[p][q] = biv[p][q] * math.factorial(p) * math.factorial(q) / kf
    return out


def linearization_gf_table(
    basis: BrenkeFamily, f2: BrenkeFamily, f3: BrenkeFamily, i: int, j: int
) -> LinearizationTable:
    order = i + j
    return LinearizationTable(
        i, j, tuple(linearization_gf(basis, f2, f3, k, order)[i][j] for k in range(order + 1))
    )


def linearization_gf_all(basis: BrenkeFamily, f2: BrenkeFamily, f3: BrenkeFamily, order: int) -> dict:
    """All ``LinearizationTable`` for ``i + j <= order`` from one pass per ``k``."""
    per_k = [linearization_gf(basis, f2, f3, k, order) for k in range(order + 1)]
    out = {}
    for i in range(order + 1):
        for j in range(order - i + 1):
            out[i, j] = LinearizationTable(i, j, tuple(per_k[k][i][j] for k in range(i + j + 1)))
    return out


def carlitz_gf(a1: PowerSeries, a2: PowerSeries, a3: PowerSeries, k: int, order: int) -> list:
    """Appell triples: ``A2(s) A3(t) / A1(s+t) (s+t)**k / k!``, returned as ``i! j! [s**i t**j]``."""
    if min(a1.order, a2.order, a3.order) < order:
        raise InsufficientOrderError(f"insufficient order: need A-series to order {order}")
    out = _bivariate_zero(order)
    if k > order:
        return out
    u = ps_shift(ps_reciprocal(a1.truncate(order), order - k), k, order)
    biv = _bivariate_zero(order)
    for N, c in enumerate(u.coeffs):
        if c:
            for l in range(N + 1):
                biv[l][N - l] += c * binomial(N, l)
    biv = _bivariate_mul_t(a3.truncate(order), _bivariate_mul_s(a2.truncate(order), biv, order), order)
    kf = math.factorial(k)
    for p in range(order + 1):
        for q in range(order - p + 1):
            out[p][q] = biv[p][q] * math.factorial(p) * math.factorial(q) / kf
    return out


def lowering_consistency(fam: BrenkeFamily, n: int) -> bool:
    """``D_b P_{n+1} == (n+1) P_n``."""
    return lowering_apply(fam, brenke_poly(fam, n + 1)) == brenke_poly(fam, n) * (n + 1)
