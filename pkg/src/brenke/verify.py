"""Identity checks run by ``brenke verify`` and the acceptance tests.

Each ``check_*`` function returns a :class:`CheckResult`; sizes default to
the bounds the package is validated at and may be lowered for quick runs.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .brenke_core import (
    Polynomial,
    appell_family,
    brenke_poly,
    hypergeometric_transfer,
    lowering_apply,
    monomial_family,
    transfer_between,
    xd_phi,
    xd_phi_hypergeometric,
    xd_reconstruct,
    compare_phi_closed_forms,
)
from .expansion import (
    addition_check,
    carlitz_gf,
    connection_explicit,
    connection_gf_table,
    convolution_check,
    duplication_coeffs,
    identity_table,
    linearization_explicit,
    linearization_gf_all,
)
from .oracle import BasisSet, expand_in_basis, oracle_connection, oracle_linearization
from .quadrature import check_integrals
from .scalar_series import ps_exp_monomial
from .special_families import (
    dunkl_apply,
    dunkl_translate,
    feldheim_coeff,
    generalized_hermite_family,
    genhermite_connection_closed,
    genhermite_normalized,
    gghps_addition,
    gghps_connection_row,
    gghps_convolution_residuals,
    gghps_duplication,
    gghps_explicit,
    gghps_family,
    gghps_multi_linearization,
    hermite_family,
    make_family,
)

HALF = Fraction(1, 2)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    elapsed: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name} ({self.elapsed:.2f}s) {self.detail}".rstrip()


def _timed(name):
    def wrap(fn):
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            passed, detail = fn(*args, **kwargs)
            return CheckResult(name, bool(passed), detail, time.perf_counter() - t0)

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


def connection_pairs(order: int = 64) -> list:
    """(label, src, basis) pairs used for the dual-path connection checks."""
    H = hermite_family(order)
    M = monomial_family(order)
    g1 = gghps_family(1, -1, 0, order)
    g2 = gghps_family(1, 1, HALF, order)
    h0 = generalized_hermite_family(0, order)
    h32 = generalized_hermite_family(Fraction(3, 2), order)
    ep = appell_family(ps_exp_monomial(1, 1, order), label="appell(e^t)")
    em = appell_family(ps_exp_monomial(-1, 1, order), label="appell(e^-t)")
    base = [("hermite", "monomial", H, M), ("gghps(1,-1,0)", "gghps(1,1,1/2)", g1, g2),
            ("genhermite(0)", "genhermite(3/2)", h0, h32), ("appell(e^t)", "appell(e^-t)", ep, em)]
    out = []
    for la, lb, fa, fb in base:
        out.append((f"{la}->{lb}", fa, fb))
        out.append((f"{lb}->{la}", fb, fa))
    return out


def linearization_triples(order: int = 64) -> list:
    """(label, basis, f2, f3) triples built from the connection pairs."""
    out = []
    pairs = connection_pairs(order)
    for label, x, y in pairs[::2]:
        la, lb = label.split("->")
        out.append((f"{la}^3", x, x, x))
        out.append((f"{la}|{lb},{la}", x, y, x))
        out.append((f"{lb}|{la},{lb}", y, x, y))
        out.append((f"{la}|{lb},{lb}", x, y, y))
    return out


def builtin_families(order: int = 64) -> list:
    specs = [
        {"family": "monomial"},
        {"family": "hermite"},
        {"family": "appell", "A": [f"1/{math.factorial(k)}" for k in range(25)]},
        {"family": "gould_hopper", "m": 3, "h": "2"},
        {"family": "gghps", "d": 1, "a": "-1", "mu": "1/2"},
        {"family": "gghps", "d": 2, "a": "3", "mu": "1"},
        {"family": "gghps", "d": 3, "a": "-1/2", "mu": "0"},
        {"family": "generalized_hermite", "mu": "3/2"},
        {"family": "hypergeometric_b", "gammas": ["1/2"], "deltas": ["5/2"]},
    ]
    return [(str(s), make_family(s, order)) for s in specs]


@_timed("1 dual-path connection")
def check_connection_dual_path(n_max: int = 16):
    """Explicit sum, generating function and oracle agree entrywise."""
    bad = []
    for label, src, basis in connection_pairs():
        e = connection_explicit(src, basis, n_max)
        g = connection_gf_table(src, basis, n_max)
        o = oracle_connection(src, basis, n_max)
        if not (e == g == o):
            bad.append(label)
    # transitivity F->G->H on the hermite / monomial / genhermite chain
    H, M, G = hermite_family(), monomial_family(64), generalized_hermite_family(HALF)
    nt = min(n_max, 12)
    if connection_explicit(H, M, nt).compose(connection_explicit(M, G, nt)) != connection_explicit(H, G, nt):
        bad.append("transitivity")
    return not bad, f"pairs={len(connection_pairs())} n<={n_max}" + (f" failing={bad}" if bad else "")


@_timed("2 dual-path linearization")
def check_linearization_dual_path(order: int = 12):
    bad = []
    count = 0
    for label, basis, f2, f3 in linearization_triples():
        gf = linearization_gf_all(basis, f2, f3, order)
        for i in range(order + 1):
            for j in range(order - i + 1):
                e = linearization_explicit(basis, f2, f3, i, j)
                o = oracle_linearization(basis, f2, f3, i, j)
                count += 1
                if not (e == gf[i, j] == o):
                    bad.append((label, i, j))
    # Appell triple against the Carlitz form
    ep = appell_family(ps_exp_monomial(1, 1, 64))
    em = appell_family(ps_exp_monomial(-1, 1, 64))
    H = hermite_family()
    for k in range(order + 1):
        c = carlitz_gf(ep.a, em.a, ep.a, k, order)
        for i in range(order + 1):
            for j in range(order - i + 1):
                if k <= i + j and c[i][j] != linearization_explicit(ep, em, ep, i, j)[k]:
                    bad.append(("carlitz", i, j, k))
    return not bad, f"tables={count} i+j<={order}" + (f" failing={bad[:5]}" if bad else "")


@_timed("3 Feldheim formula")
def check_feldheim(max_ij: int = 8):
    H = hermite_family()
    bad = []
    for i in range(max_ij + 1):
        for j in range(max_ij + 1):
            L = linearization_explicit(H, H, H, i, j)
            for k in range(i + j + 1):
                r, rem = divmod(i + j - k, 2)
                expected = feldheim_coeff(i, j, r) if rem == 0 and r <= min(i, j) else 0
                if L[k] != expected:
                    bad.append((i, j, k))
    return not bad, f"i,j<={max_ij}" + (f" failing={bad[:5]}" if bad else "")


@_timed("4 GGHPS closed-form connection")
def check_gghps_connection(n_max: int = 15):
    grid_ab = [-1, 1, 2]
    grid_mu = [Fraction(0), HALF, Fraction(1)]
    bad = []
    count = 0
    for d in (1, 2):
        for a in grid_ab:
            for mu1 in grid_mu:
                basis = gghps_family(d, a, mu1)
                for b in grid_ab:
                    for mu2 in grid_mu:
                        table = connection_explicit(gghps_family(d, b, mu2), basis, n_max)
                        count += 1
                        for n in range(n_max + 1):
                            row = gghps_connection_row(n, a, b, mu1, mu2, d)
                            if list(table.rows[n]) != row:
                                bad.append((d, a, b, mu1, mu2, n))
                            if mu1 == mu2:
                                for i in range(n // (d + 1) + 1):
                                    red = Fraction(
                                        math.factorial(n) * (b - a) ** i,
                                        math.factorial(i) * math.factorial(n - i * (d + 1)),
                                    )
                                    if row[n - i * (d + 1)] != red:
                                        bad.append(("reduced", d, a, b, mu1, n, i))
    return not bad, f"parameter sets={count} n<={n_max}" + (f" failing={bad[:5]}" if bad else "")


@_timed("5 generalized Hermite connection")
def check_genhermite(n_max: int = 12):
    mus = [Fraction(0), HALF, Fraction(1), Fraction(3, 2)]
    bad = []
    for p in range(len(mus)):
        for q in range(p + 1, len(mus)):
            mu1, mu2 = mus[p], mus[q]
            basis = BasisSet(tuple(genhermite_normalized(mu1, m) for m in range(n_max + 1)))
            for n in range(n_max + 1):
                c = expand_in_basis(genhermite_normalized(mu2, n), basis)
                for m in range(n + 1):
                    k, rem = divmod(n - m, 2)
                    expected = genhermite_connection_closed(mu1, mu2, n, k) if rem == 0 else 0
                    if c[m] != expected:
                        bad.append((mu1, mu2, n, m))
                signs = [genhermite_connection_closed(mu1, mu2, n, k) for k in range(n // 2 + 1)]
                if any(s == 0 or (s > 0) != (k % 2 == 0) for k, s in enumerate(signs)):
                    bad.append(("sign", mu1, mu2, n))
    return not bad, f"n<={n_max}" + (f" failing={bad[:5]}" if bad else "")


@_timed("6 XD-expansion reconstruction")
def check_xd(n_max: int = 30):
    bad = []
    for label, src, basis in connection_pairs():
        theta = transfer_between(basis, src)
        for n in range(n_max + 1):
            if xd_reconstruct(theta, n) != theta.r(n):
                bad.append((label, n))
    hyper_params = [(Fraction(1), Fraction(2)), (HALF, Fraction(3, 2)), (Fraction(1, 3), Fraction(7, 4))]
    for g, d in hyper_params:
        theta = hypergeometric_transfer([g], [d])
        for n in range(n_max + 1):
            if xd_reconstruct(theta, n) != theta.r(n):
                bad.append(("hyper", g, d, n))
            if xd_phi(theta, n) != xd_phi_hypergeometric([g], [d], n):
                bad.append(("2F1", g, d, n))
    reports = [compare_phi_closed_forms(g, d, n_max) for g, d in hyper_params]
    if not all(r["delta_denominator"] for r in reports):
        bad.append("closed form (delta-gamma)_k/(delta)_k")
    gamma_variant = "agrees" if all(r["gamma_denominator"] for r in reports) else "disagrees"
    detail = (f"n<={n_max}; closed form over (delta)_k matches the defining sum, "
              f"variant over (gamma)_k {gamma_variant}")
    return not bad, detail + (f" failing={bad[:5]}" if bad else "")


@_timed("7 lowering property")
def check_lowering(n_max: int = 20):
    bad = []
    for label, fam in builtin_families():
        top = min(n_max, fam.order - 1)
        for n in range(top + 1):
            if lowering_apply(fam, brenke_poly(fam, n + 1)) != brenke_poly(fam, n) * (n + 1):
                bad.append((label, n))
    for d, a, mu in ((1, -1, HALF), (2, 3, Fraction(1)), (3, Fraction(-1, 2), Fraction(5, 2))):
        for n in range(n_max + 1):
            if dunkl_apply(mu, gghps_explicit(d, a, mu, n + 1)) != gghps_explicit(d, a, mu, n) * (n + 1):
                bad.append(("dunkl", d, a, mu, n))
    return not bad, f"n<={n_max}" + (f" failing={bad[:5]}" if bad else "")


@_timed("8 addition and convolution")
def check_addition_convolution(n_max: int = 12, conv_n: int = 8, pairs: int = 20, seed: int = 20240101):
    bad = []
    families = [f for f in builtin_families() if f[1].order >= n_max]
    for label, fam in families:
        for n in range(n_max + 1):
            ys = [Fraction(s, 3) for s in range(-n - 1, n + 2)]
            if not addition_check(fam, n, ys):
                bad.append(("addition", label, n))
            if not convolution_check(fam, n, ys[: n + 1]):
                bad.append(("convolution", label, n))
    for d, a, mu in ((1, -1, HALF), (2, 2, Fraction(1)), (1, 3, Fraction(0))):
        for n in range(n_max + 1):
            q = [gghps_explicit(d, a, mu, k) for k in range(n + 1)]
            c = gghps_addition(d, a, mu, n)
            for y in (Fraction(-2), Fraction(1, 3), Fraction(5, 2)):
                expanded = Polynomial()
                for k in range(n + 1):
                    expanded = expanded + q[k] * (c[k] * y ** (n - k))
                if dunkl_translate(mu, q[n], y) != expanded:
                    bad.append(("gghps addition", d, a, mu, n))
    rng = np.random.default_rng(seed)
    worst = 0.0
    for mu in (Fraction(0), HALF):
        for n in range(conv_n + 1):
            xs = rng.uniform(-2, 2, pairs)
            ys = rng.uniform(-2, 2, pairs)
            res = gghps_convolution_residuals(1, -1, mu, n, xs, ys)
            worst = max(worst, float(res.max()))
            if not np.all(res < 1e-10):
                bad.append(("scaled convolution", mu, n))
    return not bad, f"n<={n_max}, scaled convolution max residual {worst:.1e}" + (
        f" failing={bad[:5]}" if bad else "")


@_timed("9 duplication")
def check_duplication(n_max: int = 12):
    bad = []
    alphas = [Fraction(2), HALF, Fraction(-1)]
    for label, fam in builtin_families():
        top = min(n_max, fam.order)
        polys = [brenke_poly(fam, n) for n in range(top + 1)]
        for a in alphas:
            table = duplication_coeffs(fam, a, top)
            for n in range(top + 1):
                rhs = Polynomial()
                for m in range(n + 1):
                    rhs = rhs + polys[m] * table[n, m]
                if polys[n].scale_arg(a) != rhs:
                    bad.append((label, a, n))
            if table.compose(duplication_coeffs(fam, 1 / a, top)) != identity_table(top):
                bad.append(("double", label, a))
    for d, a, mu in ((1, -1, HALF), (2, 2, Fraction(1)), (3, Fraction(1, 2), Fraction(0))):
        fam = gghps_family(d, a, mu)
        for alpha in alphas:
            table = duplication_coeffs(fam, alpha, n_max)
            for n in range(n_max + 1):
                v = gghps_duplication(d, a, mu, alpha, n)
                if v != list(table.rows[n]):
                    bad.append(("gghps", d, a, mu, alpha, n))
                sub = Polynomial()
                for m in range(n + 1):
                    sub = sub + gghps_explicit(d, a, mu, m) * v[m]
                if gghps_explicit(d, a, mu, n).scale_arg(alpha) != sub:
                    bad.append(("gghps substitution", d, a, mu, alpha, n))
    return not bad, f"n<={n_max}" + (f" failing={bad[:5]}" if bad else "")


@_timed("10 quadrature suite")
def check_quadrature(n_max: int = 10):
    reports = check_integrals(n_max)
    failing = [r["test"] for r in reports if not r["pass"]]
    worst = max(r["abs_err"] for r in reports)
    return not failing, f"{len(reports)} integrals, max abs err {worst:.1e}" + (
        f" failing={failing[:5]}" if failing else "")


@_timed("11 multi-product GGHPS linearization")
def check_multi_linearization(max_deg: int = 4):
    d = 1
    factors = [(-1, Fraction(0)), (2, HALF), (Fraction(1, 3), Fraction(1))]
    target = (Fraction(-1, 2), Fraction(3, 2))
    bad = []
    count = 0
    for i1 in range(max_deg + 1):
        for i2 in range(max_deg + 1):
            for i3 in range(max_deg + 1):
                degs = (i1, i2, i3)
                specs = [(i, a, mu) for i, (a, mu) in zip(degs, factors)]
                got = gghps_multi_linearization(specs, d, target)
                top = sum(degs)
                basis = BasisSet(tuple(gghps_explicit(d, target[0], target[1], k) for k in range(top + 1)))
                prod = Polynomial((1,))
                for i, a, mu in specs:
                    prod = prod * gghps_explicit(d, a, mu, i)
                count += 1
                if expand_in_basis(prod, basis) != got:
                    bad.append(degs)
    return not bad, f"products={count} degrees<={max_deg}" + (f" failing={bad[:5]}" if bad else "")


SUITES = {
    "connection": check_connection_dual_path,
    "linearization": check_linearization_dual_path,
    "feldheim": check_feldheim,
    "gghps": check_gghps_connection,
    "genhermite": check_genhermite,
    "xd": check_xd,
    "lowering": check_lowering,
    "addition": check_addition_convolution,
    "duplication": check_duplication,
    "integrals": check_quadrature,
    "multi": check_multi_linearization,
}


def run_suite(name: str = "all", n_max: int | None = None) -> list:
    """Run one named suite or ``all``; ``n_max`` caps every size parameter."""
    names = list(SUITES) if name == "all" else [name]
    results = []
    for key in names:
        fn = SUITES[key]
        if n_max is None:
            results.append(fn())
        elif key == "multi":
            results.append(fn(min(4, max(n_max // 3, 1))))
        elif key == "addition":
            results.append(fn(n_max, min(8, n_max)))
        else:
            results.append(fn(n_max))
    return results
