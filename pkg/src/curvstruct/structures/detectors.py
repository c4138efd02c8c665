"""Membership tests for recurrent-like curvature structures.

Every test is generic: an identity is accepted when it holds as an identity of
rational functions, i.e. on a dense open subset of the chart.  Loci where a
denominator or an elimination pivot vanishes are reported, not analysed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..curvature import CurvatureBundle
from ..symbolic import RationalFunction, irreducible_factors
from ..tensor import (
    CovariantTensor,
    curvature_action,
    kulkarni_nomizu,
    outer,
    q_action,
    wedge_2_with_k,
)
from .linsolve import SolutionFamily, solve_linear_family, solve_single

HOLDS = "holds"
FAILS = "fails"
DEGENERATE = "degenerate"
UNDETERMINED = "undetermined"

STRUCTURE_KINDS = ("K", "S-K", "GK2", "QGK", "QGK-like", "HGK", "WGK", "SGK")


@dataclass
class StructureResult:
    kind: str
    tensor: str
    verdict: str
    family: SolutionFamily | None = None
    notes: list[str] = field(default_factory=list)
    flags: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS


def _verdict(family: SolutionFamily) -> str:
    if family.lhs_zero:
        return DEGENERATE
    return HOLDS if family.consistent else FAILS


def _eta_tensor(bundle, eta) -> CovariantTensor:
    if eta is None:
        raise ValueError("this structure needs a candidate 1-form eta")
    if isinstance(eta, CovariantTensor):
        return eta
    return CovariantTensor.one_form(bundle.chart, eta)


def structure_basis(kind: str, T: CovariantTensor, bundle: CurvatureBundle, eta=None):
    """``(lhs, basis, labels, basis_names)`` for a structure equation."""
    g, S = bundle.g, bundle.S
    if kind == "K":
        return [T], ("Pi",), ("T",)
    if kind == "S-K":
        return [S], ("Pi",), ("S",)
    if kind == "GK2":
        return [T, g], ("Pi", "Phi"), ("Z", "g")
    if kind == "HGK":
        return [T, bundle.gS], ("Pi", "Psi"), ("T", "g^S")
    if kind == "WGK":
        return [T, bundle.SS], ("Pi", "Psi"), ("T", "S^S")
    if kind == "SGK":
        return ([T, bundle.SS, bundle.gS, bundle.gg], ("Pi", "Phi", "Psi", "Theta"),
                ("T", "S^S", "g^S", "g^g"))
    if kind == "QGK":
        e = _eta_tensor(bundle, eta)
        shifted = CovariantTensor(bundle.chart, g.comps + outer(e, e).comps, "symmetric-2")
        return [T, kulkarni_nomizu(g, shifted)], ("Pi", "Psi"), ("T", "g^(g+eta.eta)")
    if kind == "QGK-like":
        e = _eta_tensor(bundle, eta)
        ee = CovariantTensor(bundle.chart, outer(e, e).comps, "symmetric-2")
        return ([T, bundle.gg, kulkarni_nomizu(g, ee)], ("Pi", "Phi", "Psi"),
                ("T", "g^g", "g^(eta.eta)"))
    raise ValueError(f"unknown structure kind {kind!r}; expected one of {STRUCTURE_KINDS}")


def _nabla(T: CovariantTensor, bundle: CurvatureBundle) -> CovariantTensor:
    from ..curvature import covariant_derivative

    if T is bundle.R:
        return bundle.nabla_R
    if T is bundle.S:
        return bundle.nabla_S
    return covariant_derivative(T, bundle.gamma)


def detect_structure(kind: str, bundle: CurvatureBundle, T: CovariantTensor | None = None,
                     tensor_name: str = "R", eta=None) -> StructureResult:
    """Decide ``nabla T = sum_b c_b (x) B_b`` for the basis of ``kind``.

    ``T`` defaults to the curvature tensor ``R`` (``S`` for ``S-K``; the Ricci
    tensor for ``GK2``, i.e. Ricci generalized recurrence).
    """
    if kind == "S-K":
        T, tensor_name = bundle.S, "S"
    elif T is None:
        T = bundle.S if kind == "GK2" else bundle.R
        tensor_name = "S" if kind == "GK2" else "R"
    basis, labels, names = structure_basis(kind, T, bundle, eta)
    lhs = _nabla(T, bundle)
    family = solve_linear_family(lhs, basis, labels, names)
    result = StructureResult(kind, tensor_name, _verdict(family), family)
    if result.verdict == DEGENERATE:
        result.notes.append(f"nabla {tensor_name} vanishes identically; defining set is empty")
    if result.holds and not family.is_unique:
        result.notes.append(
            "associated 1-forms are not unique: null-space dimensions per direction "
            + str(family.null_dimensions))
    return result


def properness_flags(bundle: CurvatureBundle, T: CovariantTensor | None = None,
                     tensor_name: str = "R") -> dict:
    """Which sub-structures of SGK also hold (SGK is proper when none does)."""
    flags = {}
    for sub in ("K", "HGK", "WGK"):
        flags[sub] = detect_structure(sub, bundle, T, tensor_name).verdict
    flags["proper"] = all(v == FAILS for v in flags.values())
    return flags


# -- Roter type -------------------------------------------------------------

def detect_roter(bundle: CurvatureBundle) -> StructureResult:
    """Solve ``R = N1 g^g + N2 g^S + N3 S^S`` for scalar functions."""
    zero = bundle.chart.zero()
    arrays = [bundle.gg.comps, bundle.gS.comps, bundle.SS.comps]
    sol = solve_single(bundle.R.comps, arrays, zero)
    family = SolutionFamily(("N1", "N2", "N3"), ("g^g", "g^S", "S^S"), [sol])
    from .linsolve import collect_loci

    family.excluded_loci = collect_loci([sol], bundle.chart.names)
    if not sol.consistent:
        return StructureResult("Roter", "R", FAILS, family)
    # proper: no solution drops the S^S term
    proper = not sol.particular[2].is_zero() and all(v[2].is_zero() for v in sol.null_basis)
    result = StructureResult("Roter", "R", HOLDS, family, flags={"proper": proper})
    result.values = dict(zip(("N1", "N2", "N3"), sol.particular))
    if sol.null_basis:
        result.notes.append(f"coefficients not unique ({len(sol.null_basis)} free parameters)")
    if bundle.R.is_zero():
        result.notes.append("R vanishes identically")
    return result


# -- Einstein-like conditions -----------------------------------------------

def detect_einstein_class(bundle: CurvatureBundle) -> dict[str, StructureResult]:
    n = bundle.n
    chart = bundle.chart
    zero = chart.zero()
    S, g, S2, kappa = bundle.S, bundle.g, bundle.S2, bundle.kappa
    out = {}

    einstein = (S - g.scale(kappa / n)).is_zero()
    out["einstein"] = StructureResult("Einstein", "S", HOLDS if einstein else FAILS)

    zeros = np.full((n, n), zero, dtype=object)
    sol = solve_single(zeros, [S2.comps, S.comps, g.comps], zero)
    family = SolutionFamily(("a1", "a2", "a3"), ("S2", "S", "g"), [sol])
    monic = None
    for vec in sol.null_basis:
        if not vec[0].is_zero():
            monic = tuple(v / vec[0] for v in vec)
            break
    ein2 = StructureResult("Ein(2)", "S", HOLDS if sol.null_basis else FAILS, family)
    ein2.flags["proper"] = monic is not None
    if monic is not None:
        ein2.values = dict(zip(("a1", "a2", "a3"), monic))
    out["ein2"] = ein2

    out["quasi_einstein"] = _quasi_einstein(bundle, einstein, monic)
    return out


def _quasi_einstein(bundle, einstein: bool, monic) -> StructureResult:
    """``S = alpha g + beta eta (x) eta`` via the Ricci operator's eigenvalue structure.

    If the Ricci operator has an eigenvalue ``alpha`` of multiplicity ``n-1`` its
    minimal polynomial has degree <= 2, say ``t^2 + a2 t + a3``; with the trace
    ``(n-1) alpha + alpha' = kappa`` and ``alpha + alpha' = -a2`` this gives
    ``alpha = (kappa + a2) / (n - 2)``.  The candidate is then checked against
    every 2x2 minor of ``S - alpha g``.
    """
    n = bundle.n
    S, g, kappa = bundle.S, bundle.g, bundle.kappa
    result = StructureResult("quasi-Einstein", "S", FAILS)
    if einstein:
        result.verdict = HOLDS
        result.values = {"alpha": kappa / n, "beta": kappa * 0}
        result.notes.append("Einstein: beta = 0")
        return result
    if monic is None:
        result.notes.append("Ricci operator satisfies no quadratic relation")
        return result
    alpha = (kappa + monic[1]) / (n - 2)
    M = S.comps - g.comps * alpha
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if not (M[i, k] * M[j, l] - M[i, l] * M[j, k]).is_zero():
                        result.notes.append("S - alpha g has rank > 1")
                        result.values = {"alpha": alpha}
                        return result
    pivot = next(i for i in range(n) if not M[i, i].is_zero())
    beta = M[pivot, pivot]
    eta = CovariantTensor(bundle.chart, np.array([M[pivot, j] / beta for j in range(n)], dtype=object),
                          "one-form")
    result.verdict = HOLDS
    result.values = {"alpha": alpha, "beta": beta, "eta": eta}
    return result


# -- semisymmetry and pseudosymmetry ---------------------------------------

def check_semisymmetry(bundle: CurvatureBundle, T: CovariantTensor | None = None,
                       tensor_name: str = "R") -> StructureResult:
    """``R . T = 0`` (semisymmetric) or ``R . T = L Q(g, T)`` (pseudosymmetric)."""
    if T is None:
        T = bundle.R
    RT = curvature_action(bundle.R, T, bundle.g_inv)
    result = StructureResult("semisymmetric", tensor_name, FAILS)
    result.values["R.T"] = RT
    if RT.is_zero():
        result.verdict = HOLDS
        result.flags["pseudosymmetric"] = HOLDS
        result.values["L"] = bundle.chart.zero()
        return result
    Q = q_action(bundle.g, T)
    if Q.is_zero():
        result.flags["pseudosymmetric"] = DEGENERATE
        result.notes.append("Q(g,T) vanishes identically; pseudosymmetry defining set is empty")
        return result
    idx = next(i for i, _ in Q.nonzero_items())
    L = RT.comps[idx] / Q.comps[idx]
    if (RT - Q.scale(L)).is_zero():
        result.flags["pseudosymmetric"] = HOLDS
        result.values["L"] = L
    else:
        result.flags["pseudosymmetric"] = FAILS
    return result


def loci_strings(values, names) -> list[str]:
    out = set()
    for v in values:
        if isinstance(v, RationalFunction):
            out.update(irreducible_factors(v.den, names))
    return sorted(out)


__all__ = [
    "DEGENERATE",
    "FAILS",
    "HOLDS",
    "STRUCTURE_KINDS",
    "StructureResult",
    "check_semisymmetry",
    "detect_einstein_class",
    "detect_roter",
    "detect_structure",
    "properness_flags",
    "structure_basis",
    "wedge_2_with_k",
]
