"""Compare the numba and numpy backends of the finite-difference oracle.

    python benchmarks/bench_kernels.py [--repeat 5] [--corpus paper_example random_n4]

Kernel timings use synthetic batches; the end-to-end timing runs the full
cross-check (exact evaluation included) on bundled manifests.
"""

import argparse
import time

import numpy as np

from curvstruct import _kernels
from curvstruct.corpus import load_corpus
from curvstruct.curvature import compute_curvature
from curvstruct.manifest import manifest_metric
from curvstruct.numeric import FloatMetric, finite_difference_curvature


def best_of(fn, repeat):
    fn()  # warm-up, also triggers numba compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def synthetic(n, batch, rng):
    g = np.eye(n)[None] * 3 + 0.1 * rng.standard_normal((batch, n, n))
    g = (g + np.swapaxes(g, 1, 2)) / 2
    dg = rng.standard_normal((batch, n, n, n))
    dg = (dg + np.swapaxes(dg, 2, 3)) / 2
    exps = rng.integers(0, 3, size=(12, n))
    coeffs = rng.standard_normal(12)
    points = rng.uniform(0.5, 2, size=(batch, n))
    return g, dg, exps, coeffs, points


def bench_kernels(repeat):
    rng = np.random.default_rng(0)
    rows = []
    for n, batch in ((4, 1000), (6, 1000)):
        g, dg, exps, coeffs, points = synthetic(n, batch, rng)
        gamma = _kernels.christoffel_from_dg_np(g, dg)[0]
        dgamma = rng.standard_normal((n, n, n, n))
        cases = {
            f"poly_eval, n={n}, {batch} points": lambda k: k[0](exps, coeffs, points),
            f"christoffel, n={n}, {batch} points": lambda k: k[1](g, dg),
            f"riemann, n={n}, 100 calls": lambda k: [k[2](g[0], gamma, dgamma) for _ in range(100)],
        }
        for label, call in cases.items():
            t_np = best_of(lambda: call(_kernels.kernels(False)), repeat)
            t_nb = best_of(lambda: call(_kernels.kernels(True)), repeat)
            rows.append((label, t_np, t_nb))
    return rows


def bench_crosscheck(names, repeat):
    rows = []
    for name in names:
        bundle = compute_curvature(manifest_metric(load_corpus(name)))
        point = (1,) * bundle.n
        for flag in (False, True):
            metric = FloatMetric(bundle.g.comps, use_numba=flag)
            t = best_of(lambda: [finite_difference_curvature(metric, point) for _ in range(20)], repeat)
            if flag:
                rows[-1] = (rows[-1][0], rows[-1][1], t)
            else:
                rows.append((f"20 finite-difference points, {name}", t, None))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--corpus", nargs="*", default=["paper_example", "random_n4"])
    args = parser.parse_args()
    if _kernels.numba is None:
        raise SystemExit("numba is not installed; nothing to compare")
    rows = bench_kernels(args.repeat) + bench_crosscheck(args.corpus, args.repeat)
    width = max(len(r[0]) for r in rows)
    print(f"{'case':<{width}}  {'numpy [ms]':>11}  {'numba [ms]':>11}  {'speed-up':>8}")
    for label, t_np, t_nb in rows:
        print(f"{label:<{width}}  {t_np * 1e3:11.3f}  {t_nb * 1e3:11.3f}  {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
