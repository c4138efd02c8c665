"""Floating-point kernels for the finite-difference oracle.

Each kernel has a numba version and a numpy version with identical
semantics.  The numba versions are used when numba imports and
``CURVSTRUCT_DISABLE_NUMBA`` is unset (or ``0``).
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None


def _disabled() -> bool:
    return os.environ.get("CURVSTRUCT_DISABLE_NUMBA", "0") not in ("", "0")


USE_NUMBA = numba is not None and not _disabled()


# -- numpy reference implementations ---------------------------------------

def poly_eval_batch_np(exps: np.ndarray, coeffs: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Evaluate ``sum_t coeffs[t] * prod_k points[:, k] ** exps[t, k]`` at every point."""
    if exps.shape[0] == 0:
        return np.zeros(points.shape[0])
    powers = np.prod(points[:, None, :] ** exps[None, :, :], axis=2)
    return powers @ coeffs


def christoffel_from_dg_np(g: np.ndarray, dg: np.ndarray) -> np.ndarray:
    """``gamma[q, h, i, j]`` from ``g[q, i, j]`` and ``dg[q, k, i, j] = d_k g_ij``."""
    ginv = np.linalg.inv(g)
    first = 0.5 * (np.einsum("qijk->qkij", dg) + np.einsum("qjik->qkij", dg) - dg)
    return np.einsum("qhk,qkij->qhij", ginv, first)


def riemann_from_gamma_np(g: np.ndarray, gamma: np.ndarray, dgamma: np.ndarray) -> np.ndarray:
    """Covariant curvature in the package convention; ``dgamma[p, i, j, l] = d_l G^p_ij``."""
    up = (np.einsum("pijh->pjhi", dgamma) - np.einsum("phji->pjhi", dgamma)
          + np.einsum("phq,qij->pjhi", gamma, gamma) - np.einsum("piq,qhj->pjhi", gamma, gamma))
    return np.einsum("jp,pkhi->hijk", g, up)


def ricci_np(R: np.ndarray, ginv: np.ndarray) -> np.ndarray:
    return np.einsum("hijk,hk->ij", R, ginv)


# -- numba implementations ---------------------------------------------------

def _poly_eval_batch_nb(exps, coeffs, points):
    npts, nvar = points.shape
    out = np.zeros(npts)
    for q in range(npts):
        total = 0.0
        for t in range(exps.shape[0]):
            term = coeffs[t]
            for k in range(nvar):
                e = exps[t, k]
                if e:
                    term *= points[q, k] ** e
            total += term
        out[q] = total
    return out


def _christoffel_from_dg_nb(g, dg):
    nq, n = g.shape[0], g.shape[1]
    out = np.zeros((nq, n, n, n))
    for q in range(nq):
        ginv = np.linalg.inv(g[q])
        for h in range(n):
            for i in range(n):
                for j in range(n):
                    s = 0.0
                    for k in range(n):
                        s += ginv[h, k] * (dg[q, i, j, k] + dg[q, j, i, k] - dg[q, k, i, j])
                    out[q, h, i, j] = 0.5 * s
    return out


def _riemann_from_gamma_nb(g, gamma, dgamma):
    n = g.shape[0]
    up = np.zeros((n, n, n, n))  # up[p, j, h, i]
    for p in range(n):
        for j in range(n):
            for h in range(n):
                for i in range(n):
                    s = dgamma[p, i, j, h] - dgamma[p, h, j, i]
                    for q in range(n):
                        s += gamma[p, h, q] * gamma[q, i, j] - gamma[p, i, q] * gamma[q, h, j]
                    up[p, j, h, i] = s
    out = np.zeros((n, n, n, n))
    for h in range(n):
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    s = 0.0
                    for p in range(n):
                        s += g[j, p] * up[p, k, h, i]
                    out[h, i, j, k] = s
    return out


def _ricci_nb(R, ginv):
    n = R.shape[0]
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            s = 0.0
            for h in range(n):
                for k in range(n):
                    s += R[h, i, j, k] * ginv[h, k]
            out[i, j] = s
    return out


if numba is not None:
    poly_eval_batch_nb = numba.njit(cache=True)(_poly_eval_batch_nb)
    christoffel_from_dg_nb = numba.njit(cache=True)(_christoffel_from_dg_nb)
    riemann_from_gamma_nb = numba.njit(cache=True)(_riemann_from_gamma_nb)
    ricci_nb = numba.njit(cache=True)(_ricci_nb)
else:  # pragma: no cover
    poly_eval_batch_nb = _poly_eval_batch_nb
    christoffel_from_dg_nb = _christoffel_from_dg_nb
    riemann_from_gamma_nb = _riemann_from_gamma_nb
    ricci_nb = _ricci_nb


def kernels(use_numba: bool | None = None):
    """``(poly_eval_batch, christoffel_from_dg, riemann_from_gamma, ricci)`` for the chosen backend."""
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba and numba is not None:
        return poly_eval_batch_nb, christoffel_from_dg_nb, riemann_from_gamma_nb, ricci_nb
    return poly_eval_batch_np, christoffel_from_dg_np, riemann_from_gamma_np, ricci_np
