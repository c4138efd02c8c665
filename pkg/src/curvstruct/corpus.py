"""Bundled example manifests and the seeded random-metric generator."""

from __future__ import annotations

from importlib import resources

import numpy as np

from .manifest import Manifest, format_manifest, parse_manifest

CORPUS = ("paper_example", "flat4", "conformal4", "random_n3", "random_n4")
RANDOM_SEEDS = {"random_n3": (7, 3), "random_n4": (11, 4)}


def corpus_names() -> tuple[str, ...]:
    return CORPUS


def corpus_text(name: str) -> str:
    if name not in CORPUS:
        raise KeyError(f"unknown corpus entry {name!r}; available: {', '.join(CORPUS)}")
    return resources.files("curvstruct").joinpath("corpus", f"{name}.tomlish").read_text()


def corpus_path(name: str):
    corpus_text(name)
    return resources.files("curvstruct").joinpath("corpus", f"{name}.tomlish")


def load_corpus(name: str) -> Manifest:
    return parse_manifest(corpus_text(name), f"{name}.tomlish")


def _monomial(rng, names, degree):
    factors = [names[int(rng.integers(0, len(names)))] for _ in range(degree)]
    return "*".join(sorted(factors))


def random_polynomial_manifest(seed: int, n: int, name: str = "") -> Manifest:
    """Nondegenerate polynomial metric with entries of degree <= 2.

    Diagonal entries are ``4 + (positive monomials)``; roughly one off-diagonal
    pair in three carries a single monomial with coefficient +-1, which keeps
    the metric diagonally dominant on ``[1/2, 2]^n``.
    """
    rng = np.random.default_rng(seed)
    names = tuple(f"x{i + 1}" for i in range(n))
    metric = {}
    for i in range(n):
        terms = ["4"]
        for _ in range(int(rng.integers(1, 3))):
            coeff = int(rng.integers(1, 3))
            mono = _monomial(rng, names, int(rng.integers(1, 3)))
            terms.append(mono if coeff == 1 else f"{coeff}*{mono}")
        metric[(i + 1, i + 1)] = " + ".join(terms)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 1 / 3:
                mono = _monomial(rng, names, int(rng.integers(0, 2))) or "1"
                sign = "-" if rng.random() < 0.5 else ""
                metric[(i + 1, j + 1)] = sign + mono
    return Manifest(names, metric, names, name or f"random_n{n}_seed{seed}")


def regenerate_random(name: str) -> str:
    seed, n = RANDOM_SEEDS[name]
    return format_manifest(random_polynomial_manifest(seed, n, name))


__all__ = [
    "CORPUS",
    "corpus_names",
    "corpus_path",
    "corpus_text",
    "load_corpus",
    "random_polynomial_manifest",
    "regenerate_random",
]
