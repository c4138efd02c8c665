import numpy as np
import pytest

from curvstruct.checks import random_polynomial, random_symmetric
from curvstruct.errors import ChartMismatchError, SymmetryError
from curvstruct.tensor import (
    Chart,
    CovariantTensor,
    contract,
    curvature_action,
    exterior_derivative,
    exterior_product,
    gradient,
    is_closed,
    kulkarni_nomizu,
    q_action,
    tensor_append,
)

CHART = Chart(("x", "y", "z", "w"))


def sym(seed):
    return random_symmetric(CHART, np.random.default_rng(seed))


def identity():
    comps = CHART.zeros(2)
    for i in range(4):
        comps[i, i] = CHART.one()
    return CovariantTensor(CHART, comps, "symmetric-2")


def form(*texts):
    return CovariantTensor.one_form(CHART, [CHART.parse(t) for t in texts])


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_kulkarni_nomizu_is_curvature_type(seed):
    A, E = sym(seed), sym(seed + 10)
    K = kulkarni_nomizu(A, E)
    assert not K.symmetry_violations()
    c = K.comps
    assert all(v.is_zero() for v in (c + np.einsum("hijk->hjki", c) + np.einsum("hijk->hkij", c)).flat)
    assert K == kulkarni_nomizu(E, A)


def test_kulkarni_nomizu_of_identity():
    gg = kulkarni_nomizu(identity(), identity())
    assert gg[0, 1, 0, 1] == -2
    assert gg[0, 1, 1, 0] == 2
    assert gg[0, 1, 2, 3] == 0


def test_kulkarni_nomizu_rejects_nonsymmetric():
    comps = CHART.zeros(2)
    comps[0, 1] = CHART.one()
    with pytest.raises(SymmetryError):
        kulkarni_nomizu(identity(), CovariantTensor(CHART, comps))


def test_charts_must_agree():
    other = Chart(("a", "b", "c", "d"))
    f = CovariantTensor.one_form(other, [other.one()] * 4)
    with pytest.raises(ChartMismatchError):
        tensor_append(identity(), f)


def test_form_slot_is_last():
    f = form("x", "1", "0", "y")
    T = tensor_append(identity(), f)
    assert T.rank == 3
    assert T[0, 0, 0] == CHART.parse("x")
    assert T[2, 2, 3] == CHART.parse("y")
    assert T[0, 1, 0] == 0


def test_exterior_calculus():
    f = random_polynomial(CHART, np.random.default_rng(3), degree=2)
    assert is_closed(gradient(f, CHART))
    P = form("y", "0", "0", "0")
    dP = exterior_derivative(P)
    assert dP[1, 0] == 1 and dP[0, 1] == -1
    wedge = exterior_product(P, form("0", "x", "0", "0"))
    assert wedge[0, 1] == CHART.parse("x*y/2")
    assert wedge == -exterior_product(form("0", "x", "0", "0"), P)


def test_metric_contraction_and_trace():
    g = identity()
    A = sym(4)
    assert contract(A, (0, 1), g.comps) == sum((A[i, i] for i in range(4)), CHART.zero())
    gg = kulkarni_nomizu(g, g)
    # g^{hk} (g^g)_{hijk} = 2(n-1) g_ij
    assert contract(gg, (0, 3), g.comps) == g.scale(6)


def test_q_action_and_curvature_action():
    g, A = identity(), sym(5)
    assert q_action(g, g).is_zero()
    assert q_action(A, A).is_zero()
    Q = q_action(g, A)
    assert Q == -Q.transpose((0, 1, 3, 2))
    gg = kulkarni_nomizu(g, g)
    assert curvature_action(gg, A, g.comps) == q_action(g, A).scale(2)
