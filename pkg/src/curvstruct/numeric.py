"""Independent floating-point oracle: curvature by central finite differences.

Only the metric components are shared with the exact pipeline.  Christoffel
symbols come from first differences of the metric, their derivatives from a
second (nested) difference, so an algebra slip in the exact code would show
up as a disagreement here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import PoleError
from .symbolic import RationalFunction

DEFAULT_STEP = 1e-4
DEFAULT_TOLERANCE = 1e-6


def compile_polynomial(poly) -> tuple[np.ndarray, np.ndarray]:
    terms = list(poly.terms())
    nvars = poly.context().nvars()
    exps = np.zeros((len(terms), nvars), dtype=np.int64)
    coeffs = np.zeros(len(terms))
    for t, (e, c) in enumerate(terms):
        exps[t] = [int(v) for v in e]
        coeffs[t] = float(int(c))
    return exps, coeffs


class FloatMetric:
    """Metric components compiled to float polynomial pairs."""

    def __init__(self, components: np.ndarray, use_numba: bool | None = None):
        self.n = components.shape[0]
        self.entries = []
        for i in range(self.n):
            for j in range(i, self.n):
                rf: RationalFunction = components[i, j]
                if rf.is_zero():
                    continue
                self.entries.append((i, j, compile_polynomial(rf.num), compile_polynomial(rf.den)))
        self.poly_eval, self.christoffel, self.riemann, self.ricci = _kernels.kernels(use_numba)

    def __call__(self, points: np.ndarray) -> np.ndarray:
        out = np.zeros((points.shape[0], self.n, self.n))
        for i, j, (ne, nc), (de, dc) in self.entries:
            vals = self.poly_eval(ne, nc, points) / self.poly_eval(de, dc, points)
            out[:, i, j] = vals
            out[:, j, i] = vals
        return out


def finite_difference_curvature(metric: FloatMetric, point, step: float = DEFAULT_STEP):
    """``(gamma, R, S)`` at ``point`` from central differences of step ``step``."""
    n = metric.n
    p = np.asarray([float(v) for v in point])
    eye = np.eye(n) * step
    bases = [p] + [p + s * eye[l] for l in range(n) for s in (1, -1)]
    stencil = []
    for b in bases:
        stencil.append(b)
        for k in range(n):
            stencil += [b + eye[k], b - eye[k]]
    values = metric(np.array(stencil))
    stride = 2 * n + 1
    g_b = values[::stride]
    dg_b = np.empty((len(bases), n, n, n))
    for m in range(len(bases)):
        block = values[m * stride + 1:(m + 1) * stride]
        dg_b[m] = (block[0::2] - block[1::2]) / (2 * step)
    gamma_b = metric.christoffel(g_b, dg_b)
    gamma = gamma_b[0]
    dgamma = np.empty((n, n, n, n))
    for l in range(n):
        dgamma[..., l] = (gamma_b[1 + 2 * l] - gamma_b[2 + 2 * l]) / (2 * step)
    R = metric.riemann(np.ascontiguousarray(g_b[0]), np.ascontiguousarray(gamma), dgamma)
    S = metric.ricci(R, np.linalg.inv(g_b[0]))
    return gamma, R, S


def exact_values(arr: np.ndarray, point) -> np.ndarray:
    out = np.empty(arr.shape)
    for idx, v in np.ndenumerate(arr):
        out[idx] = float(v.evaluate(point))
    return out


def relative_deviation(numeric: np.ndarray, exact: np.ndarray) -> float:
    """Largest ``|numeric - exact| / max(|exact|, scale)`` with ``scale`` the largest exact entry."""
    scale = float(np.max(np.abs(exact))) if exact.size else 0.0
    denom = np.maximum(np.abs(exact), scale if scale > 0 else 1.0)
    return float(np.max(np.abs(numeric - exact) / denom))


def random_points(rng: np.random.Generator, n: int, count: int, accept) -> list[tuple[Fraction, ...]]:
    """Rational points with coordinates in [1/2, 2] (denominator 16) accepted by ``accept``."""
    points = []
    attempts = 0
    while len(points) < count:
        attempts += 1
        if attempts > 100 * count:
            raise PoleError("could not find pole-free sample points")
        p = tuple(Fraction(int(rng.integers(8, 33)), 16) for _ in range(n))
        if accept(p):
            points.append(p)
    return points


@dataclass
class CrosscheckResult:
    points: list[tuple[Fraction, ...]]
    step: float
    tolerance: float
    deviations: dict[str, float] = field(default_factory=dict)

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values(), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance


def _pole_free(bundle, point) -> bool:
    try:
        bundle.metric.det.evaluate(point)
        for arr in (bundle.gamma, bundle.R.comps, bundle.S.comps):
            for v in arr.flat:
                v.evaluate(point)
    except PoleError:
        return False
    return bundle.metric.det.evaluate(point) != 0


def numeric_crosscheck(bundle, points=None, count: int = 5, step: float = DEFAULT_STEP,
                       tolerance: float = DEFAULT_TOLERANCE, seed: int = 0,
                       use_numba: bool | None = None) -> CrosscheckResult:
    """Compare exact Christoffel symbols, curvature and Ricci tensor with the numeric pipeline.

    Explicit ``points`` must be pole-free (a :class:`PoleError` is raised
    otherwise); random points drawn from ``seed`` top them up to ``count``.
    """
    explicit = [tuple(Fraction(v) for v in p) for p in points or ()]
    for p in explicit:
        if len(p) != bundle.n:
            raise ValueError(f"point has {len(p)} coordinates, expected {bundle.n}")
        if not _pole_free(bundle, p):
            raise PoleError(f"point ({', '.join(str(v) for v in p)}) hits a pole or a degenerate metric")
    points = explicit
    if len(points) < count:
        rng = np.random.default_rng(seed)
        points = points + random_points(rng, bundle.n, count - len(points), lambda p: _pole_free(bundle, p))
    metric = FloatMetric(bundle.g.comps, use_numba)
    result = CrosscheckResult(points, step, tolerance, {"christoffel": 0.0, "riemann": 0.0, "ricci": 0.0})
    for p in points:
        gamma, R, S = finite_difference_curvature(metric, p, step)
        for name, num, exact in (("christoffel", gamma, bundle.gamma), ("riemann", R, bundle.R.comps),
                                 ("ricci", S, bundle.S.comps)):
            dev = relative_deviation(num, exact_values(exact, p))
            result.deviations[name] = max(result.deviations[name], dev)
    return result


__all__ = [
    "CrosscheckResult",
    "DEFAULT_STEP",
    "DEFAULT_TOLERANCE",
    "FloatMetric",
    "finite_difference_curvature",
    "numeric_crosscheck",
    "relative_deviation",
]
