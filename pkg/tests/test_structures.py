import numpy as np
import pytest

import golden
from conftest import corpus_bundle
from curvstruct.manifest import manifest_metric, parse_manifest
from curvstruct.curvature import compute_curvature
from curvstruct.structures import (
    DEGENERATE,
    FAILS,
    HOLDS,
    check_semisymmetry,
    detect_einstein_class,
    detect_roter,
    detect_structure,
    member_with_component,
    properness_flags,
    sgk_combination,
)
from curvstruct.structures.linsolve import INCONSISTENT, certify_inconsistent, solve_single
from curvstruct.structures.theorems import (
    r_dot_r,
    rdotr_expansion,
    transfer_sgk,
    verify_rdotr_expansion,
    verify_sgk_identities,
)
from curvstruct.tensor import CovariantTensor, exterior_derivative


def bundle_for(*diagonal):
    n = len(diagonal)
    coords = ", ".join(f"x{i + 1}" for i in range(n))
    text = f'[chart]\ncoordinates = "{coords}"\npositive = "{coords}"\n[metric]\n'
    text += "\n".join(f'g{i + 1}{i + 1} = "{e}"' for i, e in enumerate(diagonal))
    return compute_curvature(manifest_metric(parse_manifest(text)))


def forms_for(bundle, theta):
    ch = bundle.chart
    out = {}
    for label, templates in (("Pi", golden.PI), ("Phi", golden.PHI), ("Psi", golden.PSI)):
        out[label] = CovariantTensor.one_form(ch, [ch.parse(t) for t in golden.one_forms(templates, theta)])
    out["Theta"] = CovariantTensor.one_form(ch, [ch.parse(t) for t in theta])
    return out


THETAS = [("0", "0", "0", "0"), ("1", "0", "0", "0"), ("x2", "x1*x3", "0", "1/x4")]


@pytest.fixture(scope="module")
def sgk(example):
    return detect_structure("SGK", example)


def test_sgk_family_on_example(sgk):
    assert sgk.verdict == HOLDS
    assert all(d.status != INCONSISTENT for d in sgk.family.directions)
    assert sgk.family.null_dimensions == [1, 1, 1, 1]


@pytest.mark.parametrize("theta", THETAS)
def test_closed_form_members_satisfy_the_equation(example, theta):
    forms = forms_for(example, theta)
    assert example.nabla_R == sgk_combination(example, example.R, forms)


@pytest.mark.parametrize("theta", THETAS)
def test_detected_family_reaches_closed_form_members(example, sgk, theta):
    forms = forms_for(example, theta)
    member = member_with_component(sgk.family, example.chart, "Theta", forms["Theta"])
    for label in ("Pi", "Phi", "Psi"):
        assert member[label] == forms[label]


def test_corrupted_member_is_rejected(example):
    forms = forms_for(example, THETAS[0])
    ch = example.chart
    forms["Pi"] = forms["Pi"] + CovariantTensor.one_form(ch, [ch.one(), ch.zero(), ch.zero(), ch.zero()])
    assert example.nabla_R != sgk_combination(example, example.R, forms)
    assert not all(c.passed for c in verify_sgk_identities(example, forms))


def test_negative_verdicts_on_example(example):
    assert detect_structure("HGK", example).verdict == FAILS
    assert detect_structure("WGK", example).verdict == FAILS
    assert detect_structure("K", example).verdict == FAILS
    assert detect_structure("S-K", example).verdict == FAILS
    flags = properness_flags(example)
    assert flags["proper"]


def test_ricci_generalized_recurrence_is_unique(example):
    res = detect_structure("GK2", example)
    assert res.verdict == HOLDS and res.family.is_unique
    forms = res.family.member(example.chart)
    ch = example.chart
    assert [str(v) for v in forms["Pi"].comps] == [str(ch.parse(t)) for t in golden.PI_BAR]
    assert [str(v) for v in forms["Phi"].comps] == [str(ch.parse(t)) for t in golden.PHI_BAR]


def test_roter_and_einstein_class(example):
    roter = detect_roter(example)
    assert roter.holds and roter.flags["proper"]
    for key, text in golden.ROTER.items():
        assert roter.values[key] == example.chart.parse(text)
    classes = detect_einstein_class(example)
    assert classes["einstein"].verdict == FAILS
    assert classes["ein2"].holds and classes["ein2"].flags["proper"]
    assert classes["quasi_einstein"].verdict == FAILS


def test_semisymmetry_and_expansion(example, sgk):
    assert check_semisymmetry(example).holds
    assert r_dot_r(example).is_zero()
    ch = example.chart
    theta = CovariantTensor.one_form(ch, [ch.parse("x2"), ch.zero(), ch.zero(), ch.zero()])
    assert not exterior_derivative(theta).is_zero()
    member = member_with_component(sgk.family, ch, "Theta", theta)
    assert verify_rdotr_expansion(example, member).passed
    # the individual coefficient 2-forms do not vanish; only their sum does
    assert not exterior_derivative(member["Pi"]).is_zero()
    assert rdotr_expansion(example, member).is_zero()


def test_transfers_on_example(example, sgk):
    gforms = detect_structure("GK2", example).family.member(example.chart)
    base = sgk.family.member(example.chart)
    for kind in ("C", "W", "K"):
        new, check = transfer_sgk(kind, example, base, gforms)
        assert check.passed and check.outcome == "pass"
    pmember = member_with_component(sgk.family, example.chart, "Pi", gforms["Pi"])
    assert transfer_sgk("P", example, pmember, gforms)[1].outcome == "pass"


def test_flat_is_degenerate(flat):
    for kind in ("K", "HGK", "WGK", "SGK"):
        assert detect_structure(kind, flat).verdict == DEGENERATE
    assert detect_einstein_class(flat)["einstein"].holds


def test_space_form(sphere):
    assert detect_structure("SGK", sphere).verdict == DEGENERATE
    assert detect_einstein_class(sphere)["einstein"].holds
    roter = detect_roter(sphere)
    assert roter.holds and not roter.flags["proper"]


def test_recurrent_product_is_in_every_class():
    # a surface times a flat plane is recurrent, so every weaker structure holds too
    b = bundle_for("x2", "x1", "1", "1")
    assert detect_structure("K", b).holds
    for kind in ("HGK", "WGK", "SGK"):
        assert detect_structure(kind, b).holds
    assert not properness_flags(b)["proper"]


def test_quasi_einstein_warped_product():
    b = bundle_for("1", "x1^2", "x1^2", "x1^2")
    qe = detect_einstein_class(b)["quasi_einstein"]
    assert qe.holds
    alpha, beta, eta = qe.values["alpha"], qe.values["beta"], qe.values["eta"]
    ee = np.multiply.outer(eta.comps, eta.comps)
    assert all(v.is_zero() for v in (b.S.comps - b.g.comps * alpha - ee * beta).flat)
    assert [str(v) for v in eta.comps] == ["1", "0", "0", "0"]
    assert detect_structure("QGK", b, eta=eta).verdict in (HOLDS, FAILS)


def test_random_metric_fails_everything():
    b = corpus_bundle("random_n3")
    for kind in ("K", "HGK", "WGK", "SGK", "GK2"):
        assert detect_structure(kind, b).verdict == FAILS
    assert not check_semisymmetry(b).holds


def test_rank_certificate():
    b = corpus_bundle("random_n3")
    zero = b.chart.zero()
    nR = b.nabla_R.comps
    arrays = [b.R.comps, b.gS.comps]
    assert certify_inconsistent(nR[..., 0], arrays)
    # a consistent system is never certified
    rhs = b.R.comps * b.chart.parse("x1") + b.gS.comps
    assert not certify_inconsistent(rhs, arrays)
    sol = solve_single(rhs, arrays, zero)
    assert [str(v) for v in sol.particular] == ["x1", "1"]
