from fractions import Fraction

import pytest

import golden
from conftest import corpus_bundle
from curvstruct.checks import all_passed, curvature_checks, golden_checks
from curvstruct.corpus import load_corpus
from curvstruct.curvature import build_metric, compute_curvature, covariant_derivative
from curvstruct.errors import DegenerateMetricError
from curvstruct.manifest import manifest_metric, parsed_golden
from curvstruct.tensor import Chart, CovariantTensor, contract, curvature_action


def test_riemann_and_ricci_components(example):
    ch = example.chart
    for (h, i, j, k), text in golden.RIEMANN.items():
        assert example.R[h - 1, i - 1, j - 1, k - 1] == ch.parse(text)
    for (i, j), text in golden.RICCI.items():
        assert example.S[i - 1, j - 1] == ch.parse(text)
    nonzero = {idx for idx, _ in example.R.nonzero_items()}
    assert {tuple(sorted((a, b))) for a, b, _, _ in nonzero} == {(0, 1), (2, 3)}


def test_point_values(example):
    one = (1, 1, 1, 1)
    assert example.R[0, 1, 0, 1].evaluate(one) == Fraction(1, 2)
    assert example.S[0, 0].evaluate(one) == Fraction(-1, 2)
    assert example.kappa.evaluate(one) == -2


def test_nabla_riemann_components(example):
    ch = example.chart
    for idx, text in golden.NABLA_RIEMANN.items():
        assert example.nabla_R[tuple(i - 1 for i in idx)] == ch.parse(text)


def test_flipped_sign_fails_reference_check():
    m = load_corpus("paper_example")
    flipped = compute_curvature(manifest_metric(m), riemann_sign=-1)
    assert not all_passed(golden_checks(flipped, parsed_golden(m)))
    assert all_passed(golden_checks(corpus_bundle("paper_example"), parsed_golden(m)))


@pytest.mark.parametrize("name", ["paper_example", "flat4", "conformal4", "random_n3",
                                  pytest.param("random_n4", marks=pytest.mark.slow)])
def test_identity_battery(name):
    checks = curvature_checks(corpus_bundle(name))
    failed = [c.name for c in checks if not c.passed]
    assert not failed


def test_space_form(sphere):
    # unit sphere: R = -(1/2) g^g and S = -(n-1) g in this sign convention
    assert sphere.R == sphere.gg.scale(Fraction(-1, 2))
    assert sphere.S == sphere.g.scale(-3)
    assert sphere.kappa == -12
    assert sphere.nabla_R.is_zero()
    assert sphere.derived("C").is_zero()


def test_flat(flat):
    assert all(v.is_zero() for v in flat.gamma.flat)
    assert flat.R.is_zero() and flat.kappa == 0


def test_ricci_identity_for_one_forms():
    b = corpus_bundle("random_n3")
    ch = b.chart
    w = CovariantTensor.one_form(ch, [ch.parse("x1*x2"), ch.parse("x3"), ch.parse("1 + x1^2")])
    nn = covariant_derivative(covariant_derivative(w, b.gamma), b.gamma)
    # nn[i, x, y] = nabla_y nabla_x w_i
    assert curvature_action(b.R, w, b.g_inv) == nn - nn.transpose((0, 2, 1))


def test_derived_tensors(example, sphere):
    for kind in ("C", "W", "K"):
        assert not example.derived(kind).symmetry_violations()
    for kind in ("C", "P", "W"):
        assert sphere.derived(kind).is_zero()
    # the projective tensor is trace-free in the slots that give the Ricci tensor
    b = corpus_bundle("random_n3")
    assert contract(b.derived("P"), (0, 3), b.g_inv).is_zero()
    assert not contract(b.R, (0, 3), b.g_inv).is_zero()


def test_degenerate_metric_rejected():
    chart = Chart(("x", "y", "z"))
    with pytest.raises(DegenerateMetricError):
        build_metric(chart, [["x", "x", "0"], ["x", "x", "0"], ["0", "0", "1"]])
