"""Identities satisfied by super generalized recurrent structures, checked exactly."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..curvature import CurvatureBundle, covariant_derivative
from ..tensor import (
    CovariantTensor,
    apply_operator,
    curvature_action,
    exterior_derivative,
    exterior_product,
    gradient,
    kulkarni_nomizu,
    outer,
    raise_index,
    tensor_append,
)
from .detectors import (
    DEGENERATE,
    FAILS,
    HOLDS,
    StructureResult,
    detect_structure,
)
from .linsolve import SolutionFamily

PASS = "pass"
FAIL = "fail"
NOT_EXERCISED = "not exercised"
NOT_APPLICABLE = "not applicable"

SGK_LABELS = ("Pi", "Phi", "Psi", "Theta")


@dataclass
class Check:
    name: str
    outcome: str
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.outcome != FAIL


def _check(name, ok: bool, detail: str = "") -> Check:
    return Check(name, PASS if ok else FAIL, detail)


# -- family members ---------------------------------------------------------

def member_with_component(family: SolutionFamily, chart, label: str, form: CovariantTensor):
    """Family member whose ``label`` 1-form equals ``form``, if the family allows it.

    Uses the first null generator with a nonzero ``label`` entry in each
    direction; returns ``None`` when some direction cannot reach ``form``.
    """
    col = family.labels.index(label)
    params = {}
    for l, d in enumerate(family.directions):
        target = form[l] - d.particular[col]
        if target.is_zero():
            continue
        k = next((k for k, v in enumerate(d.null_basis) if not v[col].is_zero()), None)
        if k is None:
            return None
        params[l] = [chart.zero()] * k + [target / d.null_basis[k][col]]
    return family.member(chart, params)


def sample_members(family: SolutionFamily, chart) -> list[tuple[str, dict]]:
    """The particular member and particular + each null generator (unit multiplier)."""
    out = [("particular", family.member(chart))]
    most = max((len(d.null_basis) for d in family.directions), default=0)
    one = chart.one()
    for k in range(most):
        params = {l: [chart.zero()] * k + [one] for l, d in enumerate(family.directions)
                  if len(d.null_basis) > k}
        out.append((f"particular+generator{k + 1}", family.member(chart, params)))
    return out


def sgk_combination(bundle: CurvatureBundle, T: CovariantTensor, forms: dict) -> CovariantTensor:
    """``Pi (x) T + Phi (x) S^S + Psi (x) g^S + Theta (x) g^g`` (form slot last)."""
    total = tensor_append(T, forms["Pi"])
    total = total + tensor_append(bundle.SS, forms["Phi"])
    total = total + tensor_append(bundle.gS, forms["Psi"])
    return total + tensor_append(bundle.gg, forms["Theta"])


# -- contraction identities -------------------------------------------------

def contracted_nabla_s(bundle: CurvatureBundle, forms: dict) -> CovariantTensor:
    """Right side of the contracted structure equation for ``nabla S``."""
    n, kappa = bundle.n, bundle.kappa
    Pi, Phi, Psi, Theta = (forms[k] for k in SGK_LABELS)
    first = Phi.scale(-2)
    second = Pi + Phi.scale(2 * kappa) + Psi.scale(n - 2)
    third = Psi.scale(kappa) + Theta.scale(2 * (n - 1))
    return (tensor_append(bundle.S2, first) + tensor_append(bundle.S, second)
            + tensor_append(bundle.g, third))


def dkappa_combination(bundle: CurvatureBundle, forms: dict) -> CovariantTensor:
    n, kappa, kappa2 = bundle.n, bundle.kappa, bundle.kappa2
    Pi, Phi, Psi, Theta = (forms[k] for k in SGK_LABELS)
    return (Pi.scale(kappa) + Phi.scale(2 * (kappa * kappa - kappa2))
            + (Psi.scale(kappa) + Theta.scale(n)).scale(2 * (n - 1)))


def bianchi_contraction_rank3(bundle: CurvatureBundle, forms: dict) -> CovariantTensor:
    """Closed form of the cyclic Bianchi sum contracted in its first and last slots.

    Components are indexed ``[x2, x3, x4]``; the tensor vanishes when ``forms``
    solve the structure equation for ``R``.
    """
    n, kappa = bundle.n, bundle.kappa
    g, S, S2, R, ginv = bundle.g.comps, bundle.S.comps, bundle.S2.comps, bundle.R.comps, bundle.g_inv
    Pi, Phi, Psi, Theta = (forms[k] for k in SGK_LABELS)
    V = raise_index(Pi, ginv)
    PsiS = apply_operator(Psi, bundle.S, ginv)
    PhiS = apply_operator(Phi, bundle.S, ginv)
    a = Psi.scale(kappa) - PsiS + Theta.scale(2 * (n - 2))
    b = Pi + Phi.scale(2 * kappa) - PhiS.scale(2) + Psi.scale(n - 3)
    out = -np.einsum("p,pcab->abc", V, R)
    out = out + np.einsum("b,ac->abc", a.comps, g) - np.einsum("a,bc->abc", a.comps, g)
    out = out + np.einsum("b,ac->abc", b.comps, S) - np.einsum("a,bc->abc", b.comps, S)
    out = out - np.einsum("b,ac->abc", Phi.comps, S2) * 2 + np.einsum("a,bc->abc", Phi.comps, S2) * 2
    return CovariantTensor(bundle.chart, out, "general")


def bianchi_contraction_rank1(bundle: CurvatureBundle, forms: dict) -> CovariantTensor:
    """Further contraction of :func:`bianchi_contraction_rank3` (a 1-form)."""
    n, kappa, kappa2, ginv = bundle.n, bundle.kappa, bundle.kappa2, bundle.g_inv
    Pi, Phi, Psi, Theta = (forms[k] for k in SGK_LABELS)
    S = bundle.S

    def op(form, times=1):
        for _ in range(times):
            form = apply_operator(form, S, ginv)
        return form

    inner = (op(Pi) + Phi.scale(kappa2 - kappa * kappa) + op(Phi).scale(2 * kappa)
             - op(Phi, 2).scale(2)
             - (Psi.scale(kappa) - op(Psi) + Theta.scale(n - 1)).scale(n - 2))
    return Pi.scale(-kappa) + inner.scale(2)


def cyclic_bianchi_sum(bundle: CurvatureBundle, forms: dict) -> np.ndarray:
    """``sum over cyclic (X1, X2, X3)`` of the structure right side, indexed ``[x1..x5]``."""
    rhs = sgk_combination(bundle, bundle.R, forms).comps  # [x2, x3, x4, x5, x1]
    one = np.einsum("bcdea->abcde", rhs)
    return one + np.einsum("abcde->bcade", one) + np.einsum("abcde->cabde", one)


def verify_sgk_identities(bundle: CurvatureBundle, forms: dict, tag: str = "") -> list[Check]:
    suffix = f" [{tag}]" if tag else ""
    checks = [
        _check("contracted structure equation for nabla S" + suffix,
               bundle.nabla_S == contracted_nabla_s(bundle, forms)),
        _check("dkappa linear in the associated 1-forms" + suffix,
               bundle.dkappa == dkappa_combination(bundle, forms)),
    ]
    # both closed forms must match the actual contractions of the cyclic sum
    E = cyclic_bianchi_sum(bundle, forms)
    direct3 = np.einsum("abcde,ae->bcd", E, bundle.g_inv)
    closed3 = bianchi_contraction_rank3(bundle, forms)
    direct1 = np.einsum("bcd,cd->b", direct3, bundle.g_inv)
    closed1 = bianchi_contraction_rank1(bundle, forms)
    checks.append(_check("Bianchi contraction, rank 3" + suffix,
                         closed3.is_zero() and all(v.is_zero() for v in direct3.flat)))
    checks.append(_check("Bianchi contraction, rank 1" + suffix,
                         closed1.is_zero() and all(v.is_zero() for v in direct1.flat)))
    return checks


# -- R . R expansion ---------------------------------------------------------

def rdotr_expansion(bundle: CurvatureBundle, forms: dict) -> CovariantTensor:
    """``R . R`` assembled from the associated 1-forms and their exterior derivatives.

    With this package's curvature sign the operator ``R(X, Y)`` acting on
    tensors is minus the commutator of covariant derivatives, hence the
    overall sign.
    """
    n = bundle.n
    Pi, Phi, Psi, Theta = (forms[k] for k in SGK_LABELS)
    wedge = exterior_product
    c_R = exterior_derivative(Pi)
    c_gS2 = wedge(Phi, Psi).scale(-4)
    c_SS = exterior_derivative(Phi) - wedge(Phi, Pi + Psi.scale(2 * (n - 2))).scale(2)
    c_gS = exterior_derivative(Psi) - wedge(Phi, Theta).scale(8 * (n - 1))
    c_gg = exterior_derivative(Theta) + wedge(Theta, Pi + Psi.scale(2 * (n - 1))).scale(2)
    total = np.multiply.outer(bundle.R.comps, c_R.comps)
    for base, coeff in ((bundle.gS2, c_gS2), (bundle.SS, c_SS), (bundle.gS, c_gS), (bundle.gg, c_gg)):
        total = total + np.multiply.outer(base.comps, coeff.comps)
    return CovariantTensor(bundle.chart, -total, "general")


def r_dot_r(bundle: CurvatureBundle) -> CovariantTensor:
    cache = bundle.__dict__
    if "_rdotr" not in cache:
        cache["_rdotr"] = curvature_action(bundle.R, bundle.R, bundle.g_inv)
    return cache["_rdotr"]


def verify_rdotr_expansion(bundle: CurvatureBundle, forms: dict, tag: str = "") -> Check:
    suffix = f" [{tag}]" if tag else ""
    return _check("R.R expansion in the associated 1-forms" + suffix,
                  rdotr_expansion(bundle, forms) == r_dot_r(bundle))


def check_semisymmetry_sufficiency(bundle: CurvatureBundle, members) -> Check:
    """Closed, pairwise codirectional 1-forms imply ``R . R = 0``."""
    for tag, forms in members:
        values = [forms[k] for k in SGK_LABELS]
        closed = all(exterior_derivative(f).is_zero() for f in values)
        codirectional = all(exterior_product(a, b).is_zero()
                            for i, a in enumerate(values) for b in values[i + 1:])
        if closed and codirectional:
            return _check("semisymmetry sufficiency", r_dot_r(bundle).is_zero(),
                          f"condition met by the {tag} member")
    return Check("semisymmetry sufficiency", NOT_EXERCISED,
                 "sufficient condition not met by any tested member")


# -- transfers to C, P, W, K ------------------------------------------------

def transferred_forms(kind: str, bundle: CurvatureBundle, forms: dict, gk2: dict) -> dict:
    """1-forms for which the derived tensor of ``kind`` satisfies the same type of equation."""
    n, kappa = bundle.n, bundle.kappa
    Pi, Phi, Psi, Theta = (forms[k] for k in SGK_LABELS)
    Pib, Phib = gk2["Pi"], gk2["Phi"]
    mix = Pib.scale(kappa) + Phib.scale(n) - Pi.scale(kappa)
    out = dict(forms)
    if kind == "C":
        out["Psi"] = Psi - (Pib - Pi).scale(Fraction(1, n - 2))
        out["Theta"] = (Theta - Phib.scale(Fraction(1, n - 2))
                        + mix.scale(Fraction(1, 2 * (n - 1) * (n - 2))))
    elif kind == "W":
        out["Theta"] = Theta - mix.scale(Fraction(1, 2 * n * (n - 1)))
    elif kind == "K":
        out["Psi"] = Psi - (Pib - Pi).scale(Fraction(1, n - 2))
        out["Theta"] = Theta - Phib.scale(Fraction(1, n - 2))
    elif kind == "P":
        out["Theta"] = Theta - Phib.scale(Fraction(1, 2 * (n - 1)))
    else:
        raise ValueError(f"unknown derived tensor {kind!r}")
    return out


def transfer_sgk(kind: str, bundle: CurvatureBundle, forms: dict, gk2: dict) -> tuple[dict | None, Check]:
    name = f"{kind}-SGK transfer"
    if kind == "P" and forms["Pi"] != gk2["Pi"]:
        return None, Check(name, NOT_APPLICABLE, "needs Pi equal to the Ricci recurrence form")
    new = transferred_forms(kind, bundle, forms, gk2)
    T = bundle.derived(kind)
    ok = covariant_derivative(T, bundle.gamma) == sgk_combination(bundle, T, new)
    return new, _check(name, ok)


def same_forms_criteria(kind: str, bundle: CurvatureBundle, forms: dict) -> Check:
    """Same-1-form transfer holds iff the Ricci/scalar side condition holds.

    Both sides are evaluated independently and must agree.
    """
    T = bundle.derived(kind)
    nabla_T = covariant_derivative(T, bundle.gamma)
    same = nabla_T == sgk_combination(bundle, T, forms)
    Pi = forms["Pi"]
    if kind == "W":
        side = bundle.dkappa == Pi.scale(bundle.kappa)
        label = "dkappa = kappa Pi"
    else:
        side = bundle.nabla_S == tensor_append(bundle.S, Pi)
        label = "Ricci recurrent with Pi"
    diff = T - bundle.R
    recurrent = covariant_derivative(diff, bundle.gamma) == tensor_append(diff, Pi)
    ok = (same == side) and (same == recurrent)
    return _check(f"{kind}-SGK with the same 1-forms", ok,
                  f"same-forms={same}, {label}={side}, (T-R) recurrent with Pi={recurrent}")


# -- specialisations ---------------------------------------------------------

def verify_specialization_theorems(bundle: CurvatureBundle, results: dict) -> list[Check]:
    """Conditional implications, exercised only when their hypotheses hold."""
    checks = []
    sgk: StructureResult = results["SGK"]
    einstein = results["einstein"]
    sgk_holds = sgk.verdict == HOLDS
    chart, n, kappa = bundle.chart, bundle.n, bundle.kappa

    name = "Einstein SGK is recurrent"
    if sgk_holds and einstein.holds:
        rec = detect_structure("K", bundle)
        reachable = True
        weights = (kappa * kappa / (n * n), kappa / n, chart.one())
        for d in sgk.family.directions:
            vals = [d.particular] + d.null_basis
            combos = [sum((w * v[c] for w, c in zip(weights, (1, 2, 3))), chart.zero()) for v in vals]
            if not combos[0].is_zero() and all(c.is_zero() for c in combos[1:]):
                reachable = False
        checks.append(_check(name, rec.holds and reachable))
    else:
        checks.append(Check(name, NOT_EXERCISED))

    name = "quasi-Einstein SGK is QGK-like"
    qe = results["quasi_einstein"]
    if sgk_holds and qe.holds and not einstein.holds:
        alpha, beta, eta = qe.values["alpha"], qe.values["beta"], qe.values["eta"]
        forms = sgk.family.member(chart)
        f2 = forms["Phi"].scale(alpha * alpha) + forms["Psi"].scale(alpha) + forms["Theta"]
        f3 = forms["Phi"].scale(2 * alpha * beta) + forms["Psi"].scale(beta)
        ee = CovariantTensor(chart, outer(eta, eta).comps, "symmetric-2")
        rhs = (tensor_append(bundle.R, forms["Pi"]) + tensor_append(bundle.gg, f2)
               + tensor_append(kulkarni_nomizu(bundle.g, ee), f3))
        checks.append(_check(name, bundle.nabla_R == rhs))
    else:
        checks.append(Check(name, NOT_EXERCISED))

    name = "SGK and Ricci generalized recurrent: Phi = 0 or proper Ein(2)"
    gk2 = results["S-GK"]
    if sgk_holds and gk2.holds:
        phi_zero = member_with_component(sgk.family, chart, "Phi", CovariantTensor.zeros(chart, 1, "one-form"))
        ein2 = results["ein2"]
        checks.append(_check(name, phi_zero is not None or ein2.flags.get("proper", False)))
    else:
        checks.append(Check(name, NOT_EXERCISED))

    name = "proper Roter: SGK iff Ricci generalized recurrent"
    roter = results["roter"]
    if roter.holds and roter.flags.get("proper"):
        checks.append(_check(name, (sgk.verdict == HOLDS) == (gk2.verdict == HOLDS),
                             f"SGK {sgk.verdict}, S-GK {gk2.verdict}"))
    else:
        checks.append(Check(name, NOT_EXERCISED))
    return checks


def contracted_bianchi(bundle: CurvatureBundle) -> Check:
    """``div S = dkappa / 2``."""
    div = np.einsum("jli,ij->l", bundle.nabla_S.comps, bundle.g_inv)
    half = gradient(bundle.kappa, bundle.chart).scale(Fraction(1, 2))
    return _check("contracted second Bianchi identity",
                  all((a - b).is_zero() for a, b in zip(div, half.comps)))


__all__ = [
    "Check",
    "DEGENERATE",
    "FAIL",
    "FAILS",
    "NOT_APPLICABLE",
    "NOT_EXERCISED",
    "PASS",
    "check_semisymmetry_sufficiency",
    "contracted_bianchi",
    "member_with_component",
    "r_dot_r",
    "rdotr_expansion",
    "same_forms_criteria",
    "sample_members",
    "sgk_combination",
    "transfer_sgk",
    "transferred_forms",
    "verify_rdotr_expansion",
    "verify_sgk_identities",
    "verify_specialization_theorems",
]
