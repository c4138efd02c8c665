"""Analysis pipeline and the deterministic JSON report."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .checks import curvature_checks, golden_checks
from .curvature import CurvatureBundle, compute_curvature
from .manifest import Manifest, manifest_metric, parsed_eta, parsed_golden
from .numeric import numeric_crosscheck
from .structures import (
    HOLDS,
    StructureResult,
    check_semisymmetry,
    detect_einstein_class,
    detect_roter,
    detect_structure,
    properness_flags,
)
from .structures.detectors import UNDETERMINED
from .structures.linsolve import SolutionFamily
from .structures.theorems import (
    NOT_APPLICABLE,
    Check,
    check_semisymmetry_sufficiency,
    member_with_component,
    same_forms_criteria,
    sample_members,
    transfer_sgk,
    verify_rdotr_expansion,
    verify_sgk_identities,
    verify_specialization_theorems,
)
from .symbolic import irreducible_factors
from .tensor import CovariantTensor

SELECTIONS = ("k", "sk", "gk2", "hgk", "wgk", "sgk", "qgk", "roter", "einstein", "semisym")
TENSOR_CHOICES = ("r", "c", "p", "w", "k")
FLOAT_FORMAT = "{:.3e}"


# -- component tables -----------------------------------------------------

def _key(idx) -> str:
    return ",".join(str(i + 1) for i in idx)


def _independent(idx, kind: str) -> bool:
    if kind == "symmetric":
        return idx[0] <= idx[1]
    if kind == "christoffel":
        return idx[1] <= idx[2]
    if kind in ("curvature", "nabla"):
        h, i, j, k = idx[:4]
        return h < i and j < k and (h, i) <= (j, k)
    return True


def component_table(arr: np.ndarray, kind: str = "general") -> dict[str, str]:
    """Nonzero components, one representative per symmetry class, 1-based keys."""
    out = {}
    for idx in itertools.product(range(arr.shape[0]), repeat=arr.ndim):
        v = arr[idx]
        if not v.is_zero() and _independent(idx, kind):
            out[_key(idx)] = str(v)
    return out


def curvature_summary(bundle: CurvatureBundle) -> dict:
    return {
        "christoffel": component_table(bundle.gamma, "christoffel"),
        "riemann": component_table(bundle.R.comps, "curvature"),
        "ricci": component_table(bundle.S.comps, "symmetric"),
        "scalar": str(bundle.kappa),
        "nabla_riemann": component_table(bundle.nabla_R.comps, "nabla"),
        "g_wedge_g": component_table(bundle.gg.comps, "curvature"),
        "g_wedge_s": component_table(bundle.gS.comps, "curvature"),
        "s_wedge_s": component_table(bundle.SS.comps, "curvature"),
    }


# -- structure serialisation ------------------------------------------------

def family_document(family: SolutionFamily) -> dict:
    directions = []
    for d in family.directions:
        l = d.direction + 1 if d.direction is not None else None
        entry = {"direction": l, "status": d.status}
        if d.particular is not None:
            prefix = "theta" if l is None else f"theta_{l}"
            names = ([prefix] if len(d.null_basis) == 1
                     else [f"{prefix}_{k + 1}" for k in range(len(d.null_basis))])
            entry["particular"] = {lab: str(v) for lab, v in zip(family.labels, d.particular)}
            entry["parameters"] = names
            entry["null_space"] = [{"parameter": p, "vector": {lab: str(v) for lab, v in zip(family.labels, vec)}}
                                   for p, vec in zip(names, d.null_basis)]
            general = {}
            for c, lab in enumerate(family.labels):
                parts = [str(d.particular[c])] if not d.particular[c].is_zero() else []
                for p, vec in zip(names, d.null_basis):
                    if not vec[c].is_zero():
                        parts.append(f"{p}*({vec[c]})")
                general[lab] = " + ".join(parts) or "0"
            entry["general"] = general
        directions.append(entry)
    return {
        "labels": list(family.labels),
        "basis": list(family.basis_names),
        "directions": directions,
        "null_dimensions": family.null_dimensions,
        "unique": family.is_unique,
    }


def _value_document(v):
    if isinstance(v, CovariantTensor):
        return [str(c) for c in v.comps.flat] if v.rank == 1 else component_table(v.comps)
    return str(v)


def structure_document(result: StructureResult) -> dict:
    doc = {"tensor": result.tensor, "verdict": result.verdict, "notes": list(result.notes)}
    if result.flags:
        doc["flags"] = {k: v for k, v in result.flags.items()}
    if result.values:
        doc["values"] = {k: _value_document(v) for k, v in result.values.items()}
    if result.family is not None and result.kind not in ("Ein(2)",):
        doc["family"] = family_document(result.family)
    elif result.family is not None:
        doc["solution_space_dimension"] = len(result.family.directions[0].null_basis)
    return doc


def check_document(c: Check) -> dict:
    return {"name": c.name, "outcome": c.outcome, "detail": c.detail}


# -- the pipeline -----------------------------------------------------------

@dataclass
class Analysis:
    manifest: Manifest
    bundle: CurvatureBundle
    results: dict[str, StructureResult] = field(default_factory=dict)
    theorems: list[Check] = field(default_factory=list)
    numeric: object = None

    @property
    def excluded_loci(self) -> list[str]:
        names = self.bundle.chart.names
        loci = set()
        det = self.bundle.metric.det
        for poly in (det.num, det.den):
            loci.update(irreducible_factors(poly, names))
        for v in self.bundle.g.comps.flat:
            loci.update(irreducible_factors(v.den, names))
        for r in self.results.values():
            if r.family is not None:
                loci.update(r.family.excluded_loci)
        return sorted(loci, key=lambda s: (len(s), s))


def _selected(structures) -> tuple[str, ...]:
    if structures is None:
        return SELECTIONS
    chosen = tuple(s.strip().lower() for s in structures if s.strip())
    bad = [s for s in chosen if s not in SELECTIONS]
    if bad:
        raise ValueError(f"unknown structure selection {bad[0]!r}; choose from {', '.join(SELECTIONS)}")
    return chosen


def _nonclosed_theta(chart):
    """``x2 dx1``, a 1-form with nonzero exterior derivative."""
    comps = [chart.zero()] * chart.dim
    comps[0] = chart.coordinate(1)
    return CovariantTensor.one_form(chart, comps)


def sgk_theorem_checks(bundle: CurvatureBundle, results: dict) -> list[Check]:
    """The full theorem battery for an SGK family of ``R``."""
    sgk = results["SGK"]
    chart = bundle.chart
    checks: list[Check] = []
    members = sample_members(sgk.family, chart)
    alt = member_with_component(sgk.family, chart, "Theta", _nonclosed_theta(chart))
    if alt is not None:
        members.append(("nonclosed-theta", alt))
    for tag, forms in members:
        checks += verify_sgk_identities(bundle, forms, tag)
        checks.append(verify_rdotr_expansion(bundle, forms, tag))
    checks.append(check_semisymmetry_sufficiency(bundle, members))
    gk2 = results.get("S-GK")
    if gk2 is not None and gk2.holds:
        gforms = gk2.family.member(chart)
        base = members[0][1]
        for kind in ("C", "W", "K"):
            checks.append(transfer_sgk(kind, bundle, base, gforms)[1])
        pmember = member_with_component(sgk.family, chart, "Pi", gforms["Pi"])
        if pmember is None:
            checks.append(Check("P-SGK transfer", NOT_APPLICABLE, "no member with Pi equal to the Ricci form"))
        else:
            checks.append(transfer_sgk("P", bundle, pmember, gforms)[1])
    else:
        checks.append(Check("transfers to C, P, W, K", NOT_APPLICABLE, "Ricci generalized recurrence fails"))
    for kind in ("C", "P", "W", "K"):
        checks.append(same_forms_criteria(kind, bundle, members[0][1]))
    return checks


def analyze(manifest: Manifest, structures=None, tensor: str = "r", numeric: bool = True,
            riemann_sign: int = 1, seed: int = 0) -> Analysis:
    selection = _selected(structures)
    tensor = tensor.lower()
    if tensor not in TENSOR_CHOICES:
        raise ValueError(f"unknown tensor {tensor!r}; choose from {', '.join(TENSOR_CHOICES)}")
    bundle = compute_curvature(manifest_metric(manifest), riemann_sign)
    T = bundle.tensor(tensor)
    tname = tensor.upper()
    analysis = Analysis(manifest, bundle)
    res = analysis.results

    for key, kind in (("k", "K"), ("hgk", "HGK"), ("wgk", "WGK"), ("sgk", "SGK")):
        if key in selection:
            res[kind] = detect_structure(kind, bundle, T, tname)
    if "sgk" in selection and res["SGK"].holds:
        res["SGK"].flags.update(properness_flags(bundle, T, tname))
    if "sk" in selection or "sgk" in selection:
        res["S-K"] = detect_structure("S-K", bundle)
    if "gk2" in selection or "sgk" in selection:
        res["S-GK"] = detect_structure("GK2", bundle)
    if "roter" in selection or "sgk" in selection:
        res["roter"] = detect_roter(bundle)
    if "einstein" in selection or "sgk" in selection or "qgk" in selection:
        res.update(detect_einstein_class(bundle))
    if "qgk" in selection:
        eta = parsed_eta(manifest)
        source = "manifest"
        if eta is None and res["quasi_einstein"].holds and "eta" in res["quasi_einstein"].values:
            eta, source = res["quasi_einstein"].values["eta"], "quasi-Einstein decomposition"
        for kind in ("QGK", "QGK-like"):
            if eta is None:
                res[kind] = StructureResult(kind, tname, UNDETERMINED,
                                            notes=["no candidate 1-form eta supplied"])
            else:
                res[kind] = detect_structure(kind, bundle, T, tname, eta=eta)
                res[kind].notes.append(f"eta taken from the {source}")
    if "semisym" in selection:
        res["semisymmetry"] = check_semisymmetry(bundle, T, tname)
        res["semisymmetry"].values.pop("R.T", None)

    if "sgk" in selection and tensor == "r":
        if res["SGK"].holds:
            analysis.theorems += sgk_theorem_checks(bundle, res)
        analysis.theorems += verify_specialization_theorems(bundle, res)
    if numeric:
        analysis.numeric = numeric_crosscheck(bundle, manifest.points or None, seed=seed)
    return analysis


def _fraction_text(q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def manifest_document(m: Manifest) -> dict:
    doc = {
        "name": m.name,
        "coordinates": list(m.coordinates),
        "positive": list(m.positive),
        "metric": {f"{i},{j}": expr for (i, j), expr in sorted(m.metric.items())},
    }
    if m.eta is not None:
        doc["eta"] = list(m.eta)
    if m.points:
        doc["points"] = [[_fraction_text(v) for v in p] for p in m.points]
    return doc


def numeric_document(result) -> dict:
    if result is None:
        return {"skipped": True}
    return {
        "points": [[_fraction_text(v) for v in p] for p in result.points],
        "step": FLOAT_FORMAT.format(result.step),
        "tolerance": FLOAT_FORMAT.format(result.tolerance),
        "max_relative_error": {k: FLOAT_FORMAT.format(v) for k, v in sorted(result.deviations.items())},
        "passed": result.passed,
    }


def report_document(analysis: Analysis) -> dict:
    doc = {
        "manifest": manifest_document(analysis.manifest),
        "curvature": curvature_summary(analysis.bundle),
        "structures": {k: structure_document(v) for k, v in analysis.results.items()},
        "theorems": [check_document(c) for c in analysis.theorems],
        "excluded_loci": analysis.excluded_loci,
        "numeric_checks": numeric_document(analysis.numeric),
    }
    if analysis.bundle.riemann_sign != 1:
        doc["curvature"]["riemann_sign"] = analysis.bundle.riemann_sign
    return doc


def report_json(analysis: Analysis) -> str:
    return json.dumps(report_document(analysis), indent=2, sort_keys=True) + "\n"


def verify_suite(manifest: Manifest, riemann_sign: int = 1) -> list[Check]:
    """Identity batteries, reference components and, when SGK holds, the SGK theorems."""
    bundle = compute_curvature(manifest_metric(manifest), riemann_sign)
    checks = curvature_checks(bundle)
    checks += golden_checks(bundle, parsed_golden(manifest))
    sgk = detect_structure("SGK", bundle)
    if sgk.verdict == HOLDS:
        members = sample_members(sgk.family, bundle.chart)
        for tag, forms in members:
            checks += verify_sgk_identities(bundle, forms, tag)
            checks.append(verify_rdotr_expansion(bundle, forms, tag))
    else:
        checks.append(Check("SGK identities", "not exercised", f"SGK {sgk.verdict}"))
    return checks


__all__ = [
    "Analysis",
    "SELECTIONS",
    "analyze",
    "component_table",
    "report_document",
    "report_json",
    "sgk_theorem_checks",
    "verify_suite",
]
