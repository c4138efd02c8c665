"""Levi-Civita curvature of a coordinate metric, computed exactly.

Sign conventions are pinned by reproducing the worked example metric
``x2 dx1^2 + x1 dx2^2 + x4 dx3^2 + x3 dx4^2``, whose published values have
``R_1212 > 0`` and ``S_11 < 0`` on the positive orthant:

* with ``R^p_{jhi} = d_h G^p_{ij} - d_i G^p_{hj} + G^p_{hq} G^q_{ij} - G^p_{iq} G^q_{hj}``
  (so that ``R(e_h, e_i) e_j = R^p_{jhi} e_p`` for ``R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]``),
  the stored tensor is ``R_{hijk} = g(R(e_h, e_i) e_k, e_j) = g_{jp} R^p_{khi}``;
* ``S_ij = g^{hk} R_{hijk}`` (first and last slot contracted).

For a space of constant sectional curvature c this gives ``R = -(c/2) g ^ g``,
``S = -(n-1) c g`` and ``kappa = -n(n-1) c``.  The curvature operator induced
by ``R`` through ``g(D(X,Y)Z, W) = R(X,Y,Z,W)`` is therefore
``-([nabla_X, nabla_Y] - nabla_[X,Y])``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import DegenerateMetricError, SymmetryError
from .symbolic import RationalFunction
from .tensor import (
    Chart,
    CovariantTensor,
    SecondLevelData,
    contract,
    gradient,
    kulkarni_nomizu,
    second_level,
    wedge_vector_with_T,
)

DERIVED_KINDS = ("C", "P", "W", "K")


@dataclass(frozen=True)
class MetricData:
    chart: Chart
    g: CovariantTensor
    g_inv: np.ndarray
    det: RationalFunction

    @property
    def n(self) -> int:
        return self.chart.dim


def invert_matrix(a: np.ndarray, zero: RationalFunction):
    """Gauss-Jordan inverse and determinant over the rational-function field.

    Returns ``(inverse, det)``; ``inverse`` is ``None`` when ``det == 0``.
    Pivot choice: first nonzero entry in the current column (deterministic).
    """
    n = a.shape[0]
    one = zero + 1
    work = np.empty((n, 2 * n), dtype=object)
    work[:, :n] = a
    for i in range(n):
        for j in range(n):
            work[i, n + j] = one if i == j else zero
    det = one
    for col in range(n):
        pivot = next((r for r in range(col, n) if not work[r, col].is_zero()), None)
        if pivot is None:
            return None, zero
        if pivot != col:
            work[[col, pivot]] = work[[pivot, col]]
            det = -det
        p = work[col, col]
        det = det * p
        inv_p = p.inverse()
        work[col] = [v * inv_p for v in work[col]]
        for r in range(n):
            if r != col and not work[r, col].is_zero():
                factor = work[r, col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return work[:, n:].copy(), det


def build_metric(chart: Chart, components) -> MetricData:
    """Validate a symmetric component table and invert it exactly.

    ``components`` is an ``n x n`` array-like of :class:`RationalFunction`
    (or strings parsed on ``chart``).
    """
    n = chart.dim
    comps = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            value = components[i][j]
            comps[i, j] = chart.parse(value) if isinstance(value, str) else chart.zero() + value
    g = CovariantTensor(chart, comps, "symmetric-2")
    if not g.is_symmetric():
        raise SymmetryError("metric component table is not symmetric")
    g_inv, det = invert_matrix(comps, chart.zero())
    if g_inv is None or det.is_zero():
        raise DegenerateMetricError("metric determinant is identically zero")
    return MetricData(chart, g, g_inv, det)


def metric_partials(m: MetricData) -> np.ndarray:
    """``dg[k, i, j] = d_k g_ij``."""
    n = m.n
    out = np.empty((n, n, n), dtype=object)
    for k in range(n):
        for i in range(n):
            for j in range(i, n):
                out[k, i, j] = out[k, j, i] = m.g.comps[i, j].diff(k)
    return out


def christoffel(m: MetricData) -> np.ndarray:
    """Second-kind symbols ``gamma[h, i, j] = G^h_{ij}``."""
    dg = metric_partials(m)
    # first kind: G_{k ij} = (d_i g_jk + d_j g_ik - d_k g_ij) / 2
    first = (np.transpose(dg, (2, 0, 1)) + np.transpose(dg, (2, 1, 0)) - dg) * Fraction(1, 2)
    return np.einsum("hk,kij->hij", m.g_inv, first)


def partial_array(comps: np.ndarray) -> np.ndarray:
    """Append a partial-derivative axis: ``out[..., l] = d_l comps[...]``."""
    n = comps.shape[0]
    out = np.empty(comps.shape + (n,), dtype=object)
    for idx, value in np.ndenumerate(comps):
        for l in range(n):
            out[idx + (l,)] = value.diff(l)
    return out


def riemann(m: MetricData, gamma: np.ndarray, sign: int = 1) -> CovariantTensor:
    """Fully covariant curvature tensor ``R_{hijk}``.

    ``sign=-1`` flips the convention; it exists only as a negative control
    for the golden-value checks.
    """
    dgamma = partial_array(gamma)  # dgamma[p, i, j, l] = d_l G^p_{ij}
    # R^p_{jhi}, stored as up[p, j, h, i]
    up = (np.einsum("pijh->pjhi", dgamma)
          - np.einsum("phji->pjhi", dgamma)
          + np.einsum("phq,qij->pjhi", gamma, gamma)
          - np.einsum("piq,qhj->pjhi", gamma, gamma))
    comps = np.einsum("jp,pkhi->hijk", m.g.comps, up)
    if sign != 1:
        comps = -comps
    return CovariantTensor(m.chart, comps, "curvature-type-4")


def covariant_derivative(T: CovariantTensor, gamma: np.ndarray) -> CovariantTensor:
    """``(nabla T)_{i1..ik, l} = d_l T_{i1..ik} - sum_m G^p_{l i_m} T_{..p..}``."""
    k = T.rank
    letters = "abcdefgh"[:k]
    result = partial_array(T.comps)
    for m in range(k):
        t_idx = letters[:m] + "p" + letters[m + 1:]
        result = result - np.einsum(f"pl{letters[m]},{t_idx}->{letters}l", gamma, T.comps)
    return CovariantTensor(T.chart, result, "general")


class CurvatureBundle:
    """Every curvature quantity derived from one metric.

    Quantities that are not needed by every caller (the derivatives of the
    curvature and the Kulkarni-Nomizu squares) are computed on first access.
    """

    def __init__(self, metric: MetricData, riemann_sign: int = 1):
        self.metric = metric
        self.chart = metric.chart
        self.n = metric.n
        self.riemann_sign = riemann_sign
        self.gamma = christoffel(metric)
        self.R = riemann(metric, self.gamma, riemann_sign)
        S = contract(self.R, (0, 3), metric.g_inv)
        self.S = CovariantTensor(self.chart, S.comps, "symmetric-2")
        self.ricci_level2: SecondLevelData = second_level(self.S, metric.g_inv)
        self.kappa: RationalFunction = self.ricci_level2.trace
        self.kappa2: RationalFunction = self.ricci_level2.trace_squared
        self.S2: CovariantTensor = self.ricci_level2.squared

    @property
    def g(self) -> CovariantTensor:
        return self.metric.g

    @property
    def g_inv(self) -> np.ndarray:
        return self.metric.g_inv

    @cached_property
    def dkappa(self) -> CovariantTensor:
        return gradient(self.kappa, self.chart)

    @cached_property
    def nabla_R(self) -> CovariantTensor:
        return covariant_derivative(self.R, self.gamma)

    @cached_property
    def nabla_S(self) -> CovariantTensor:
        return covariant_derivative(self.S, self.gamma)

    @cached_property
    def gg(self) -> CovariantTensor:
        return kulkarni_nomizu(self.g, self.g)

    @cached_property
    def gS(self) -> CovariantTensor:
        return kulkarni_nomizu(self.g, self.S)

    @cached_property
    def SS(self) -> CovariantTensor:
        return kulkarni_nomizu(self.S, self.S)

    @cached_property
    def gS2(self) -> CovariantTensor:
        return kulkarni_nomizu(self.g, self.S2)

    def derived(self, kind: str) -> CovariantTensor:
        return derived_tensor(kind, self)

    def tensor(self, name: str) -> CovariantTensor:
        """Look up a rank-4 tensor by its one-letter name (``R``, ``C``, ``P``, ``W``, ``K``)."""
        key = name.upper()
        if key == "R":
            return self.R
        return self.derived(key)


def compute_curvature(metric: MetricData, riemann_sign: int = 1) -> CurvatureBundle:
    return CurvatureBundle(metric, riemann_sign)


def derived_tensor(kind: str, bundle: CurvatureBundle) -> CovariantTensor:
    """Conformal (C), projective (P), concircular (W) or conharmonic (K) tensor."""
    cache = bundle.__dict__.setdefault("_derived", {})
    kind = kind.upper()
    if kind in cache:
        return cache[kind]
    n = bundle.n
    if n < 3:
        raise ValueError("derived curvature tensors need n >= 3")
    R, kappa = bundle.R, bundle.kappa
    if kind == "C":
        out = R - bundle.gS.scale(Fraction(1, n - 2)) \
            + bundle.gg.scale(kappa / (2 * (n - 1) * (n - 2)))
        out = CovariantTensor(bundle.chart, out.comps, "curvature-type-4")
    elif kind == "P":
        wedge = wedge_vector_with_T(bundle.S, bundle.g)  # [x1, x2, x, y]
        comps = R.comps - np.transpose(wedge.comps, (2, 3, 0, 1)) * Fraction(1, n - 1)
        out = CovariantTensor(bundle.chart, comps, "general")
    elif kind == "W":
        out = R - bundle.gg.scale(kappa / (2 * n * (n - 1)))
        out = CovariantTensor(bundle.chart, out.comps, "curvature-type-4")
    elif kind == "K":
        out = R - bundle.gS.scale(Fraction(1, n - 2))
        out = CovariantTensor(bundle.chart, out.comps, "curvature-type-4")
    else:
        raise ValueError(f"unknown derived tensor {kind!r}; expected one of {DERIVED_KINDS}")
    cache[kind] = out
    return out
