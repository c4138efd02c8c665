"""Identity batteries run by ``verify`` and by the property tests."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .curvature import CurvatureBundle, covariant_derivative
from .structures.theorems import PASS, Check, _check, contracted_bianchi
from .tensor import Chart, CovariantTensor, contract, curvature_action, wedge_2_with_k


def _all_zero(arr) -> bool:
    return all(v.is_zero() for v in np.asarray(arr).flat)


def random_polynomial(chart: Chart, rng: np.random.Generator, degree: int = 1, terms: int = 3):
    """Sum of a few random monomials of total degree <= ``degree`` with small integer coefficients."""
    n = chart.dim
    out = chart.zero()
    for _ in range(terms):
        c = int(rng.integers(-3, 4))
        mono = chart.constant(c)
        for _ in range(int(rng.integers(0, degree + 1))):
            mono = mono * chart.coordinate(int(rng.integers(0, n)))
        out = out + mono
    return out


def random_symmetric(chart: Chart, rng: np.random.Generator, degree: int = 1) -> CovariantTensor:
    n = chart.dim
    comps = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(i, n):
            comps[i, j] = comps[j, i] = random_polynomial(chart, rng, degree)
    return CovariantTensor(chart, comps, "symmetric-2")


def curvature_checks(bundle: CurvatureBundle, seed: int = 0) -> list[Check]:
    """Symmetries, both Bianchi identities, metric compatibility and the product rules."""
    R, g, ginv = bundle.R.comps, bundle.g, bundle.g_inv
    checks = [
        _check("curvature symmetries", not bundle.R.symmetry_violations()),
        _check("first Bianchi identity",
               _all_zero(R + np.einsum("hijk->hjki", R) + np.einsum("hijk->hkij", R))),
    ]
    dR = bundle.nabla_R.comps
    checks.append(_check("second Bianchi identity",
                         _all_zero(dR + np.einsum("iljkh->hijkl", dR)
                                   + np.einsum("lhjki->hijkl", dR))))
    checks.append(_check("metric compatibility", covariant_derivative(g, bundle.gamma).is_zero()))
    checks.append(_check("curvature annihilates the metric", curvature_action(bundle.R, g, ginv).is_zero()))
    checks.append(contracted_bianchi(bundle))
    C = bundle.derived("C")
    checks.append(_check("conformal tensor is trace-free", contract(C, (0, 3), ginv).is_zero()))
    n, kappa = bundle.n, bundle.kappa
    K = bundle.derived("K")
    consistent = (C == K + bundle.gg.scale(kappa / (2 * (n - 1) * (n - 2)))
                  and K == bundle.R - bundle.gS.scale(Fraction(1, n - 2)))
    checks.append(_check("derived tensor assembly", consistent))

    rng = np.random.default_rng(seed)
    A = random_symmetric(bundle.chart, rng)
    gA = wedge_2_with_k(g, A)
    lhs = covariant_derivative(gA, bundle.gamma)
    rhs = wedge_2_with_k(g, covariant_derivative(A, bundle.gamma))
    checks.append(_check("covariant derivative commutes with g-product", lhs == rhs))
    lhs = curvature_action(bundle.R, gA, ginv)
    rhs = wedge_2_with_k(g, curvature_action(bundle.R, A, ginv))
    checks.append(_check("curvature action commutes with g-product", lhs == rhs))
    return checks


GOLDEN_TENSORS = ("riemann", "ricci", "scalar", "nabla_riemann", "g_wedge_g", "g_wedge_s", "s_wedge_s",
                  "christoffel")


def golden_tensor(bundle: CurvatureBundle, name: str):
    if name == "riemann":
        return bundle.R.comps
    if name == "ricci":
        return bundle.S.comps
    if name == "scalar":
        return np.array(bundle.kappa, dtype=object)
    if name == "nabla_riemann":
        return bundle.nabla_R.comps
    if name == "g_wedge_g":
        return bundle.gg.comps
    if name == "g_wedge_s":
        return bundle.gS.comps
    if name == "s_wedge_s":
        return bundle.SS.comps
    if name == "christoffel":
        return bundle.gamma
    raise KeyError(name)


def golden_checks(bundle: CurvatureBundle, golden: dict) -> list[Check]:
    """Compare against reference components ``{(name, index): RationalFunction}`` (1-based)."""
    if not golden:
        return []
    mismatches = []
    for (name, index), expected in sorted(golden.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        arr = golden_tensor(bundle, name)
        actual = arr[tuple(i - 1 for i in index)] if index else arr.item()
        if actual != expected:
            mismatches.append(f"{name}[{','.join(map(str, index))}]")
    detail = "mismatch at " + ", ".join(mismatches) if mismatches else f"{len(golden)} components"
    return [_check("reference components", not mismatches, detail)]


def all_passed(checks) -> bool:
    return all(c.outcome != "fail" for c in checks)


__all__ = [
    "PASS",
    "all_passed",
    "curvature_checks",
    "golden_checks",
    "random_polynomial",
    "random_symmetric",
]
