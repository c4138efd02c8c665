"""Covariant tensor fields with rational-function components.

Components live in dense ``numpy`` object arrays of shape ``(n,) * k`` whose
entries are :class:`RationalFunction` values.  Indices are 0-based in Python;
only printing and serialization switch to 1-based labels.

Slot conventions used throughout the package:

* a covariant derivative or a 1-form factor ``Pi (x) T`` is appended as the
  *last* slot, so ``(nabla R)[h, i, j, k, l]`` is ``R_{hijk,l}``;
* the curvature action ``D . T`` and ``Q(A, T)`` append the ``(x, y)`` pair as
  the last two slots.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ChartMismatchError, SymmetryError
from .symbolic import RationalFunction, parse_expression

SYMMETRY_TAGS = ("general", "symmetric-2", "one-form", "two-form", "curvature-type-4")
_LETTERS = "abcdefghijklmnopqrstuvw"


@dataclass(frozen=True)
class Chart:
    """Coordinate system: ordered coordinate names plus declared-positive ones."""

    names: tuple[str, ...]
    positive: tuple[str, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "positive", tuple(self.positive))
        if len(self.names) < 3:
            raise ValueError(f"dimension must be at least 3, got {len(self.names)}")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"coordinate names are not distinct: {self.names}")
        unknown = set(self.positive) - set(self.names)
        if unknown:
            raise ValueError(f"positivity declared for unknown coordinates {sorted(unknown)}")

    @property
    def dim(self) -> int:
        return len(self.names)

    def zero(self) -> RationalFunction:
        return RationalFunction.zero(self.names)

    def one(self) -> RationalFunction:
        return RationalFunction.one(self.names)

    def constant(self, value) -> RationalFunction:
        return RationalFunction.constant(value, self.names)

    def coordinate(self, index: int) -> RationalFunction:
        return RationalFunction.variable(index, self.names)

    def parse(self, text: str) -> RationalFunction:
        return parse_expression(text, self.names)

    def zeros(self, rank: int) -> np.ndarray:
        return np.full((self.dim,) * rank, self.zero(), dtype=object)


class CovariantTensor:
    """A (0, k) tensor field given by its components in a chart."""

    __slots__ = ("chart", "comps", "symmetry")

    def __init__(self, chart: Chart, comps, symmetry: str = "general"):
        if symmetry not in SYMMETRY_TAGS:
            raise ValueError(f"unknown symmetry tag {symmetry!r}")
        comps = np.asarray(comps, dtype=object)
        n = chart.dim
        if comps.ndim < 1 or any(s != n for s in comps.shape):
            raise ValueError(f"component array shape {comps.shape} does not match dimension {n}")
        zero = chart.zero()
        for idx, value in np.ndenumerate(comps):
            if not isinstance(value, RationalFunction):
                comps[idx] = zero + value
        self.chart = chart
        self.comps = comps
        self.symmetry = symmetry

    # -- construction -----------------------------------------------------

    @classmethod
    def zeros(cls, chart: Chart, rank: int, symmetry: str = "general") -> CovariantTensor:
        return cls(chart, chart.zeros(rank), symmetry)

    @classmethod
    def one_form(cls, chart: Chart, components) -> CovariantTensor:
        comps = np.empty(chart.dim, dtype=object)
        for i, c in enumerate(components):
            comps[i] = chart.parse(c) if isinstance(c, str) else c
        return cls(chart, comps, "one-form")

    # -- basic protocol ---------------------------------------------------

    @property
    def rank(self) -> int:
        return self.comps.ndim

    @property
    def n(self) -> int:
        return self.chart.dim

    def __getitem__(self, index):
        return self.comps[index]

    def _same_chart(self, other: CovariantTensor):
        if self.chart.names != other.chart.names:
            raise ChartMismatchError(f"charts differ: {self.chart.names} vs {other.chart.names}")

    def __add__(self, other):
        if not isinstance(other, CovariantTensor):
            return NotImplemented
        self._same_chart(other)
        tag = self.symmetry if self.symmetry == other.symmetry else "general"
        return CovariantTensor(self.chart, self.comps + other.comps, tag)

    def __sub__(self, other):
        if not isinstance(other, CovariantTensor):
            return NotImplemented
        self._same_chart(other)
        tag = self.symmetry if self.symmetry == other.symmetry else "general"
        return CovariantTensor(self.chart, self.comps - other.comps, tag)

    def __neg__(self):
        return CovariantTensor(self.chart, -self.comps, self.symmetry)

    def scale(self, factor) -> CovariantTensor:
        """Multiply every component by a scalar function (or number)."""
        return CovariantTensor(self.chart, self.comps * factor, self.symmetry)

    __mul__ = scale
    __rmul__ = scale

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps.flat)

    def __eq__(self, other):
        if not isinstance(other, CovariantTensor):
            return NotImplemented
        return (self.chart.names == other.chart.names and self.comps.shape == other.comps.shape
                and all(a == b for a, b in zip(self.comps.flat, other.comps.flat)))

    __hash__ = None

    def transpose(self, axes) -> CovariantTensor:
        return CovariantTensor(self.chart, np.transpose(self.comps, axes), "general")

    def nonzero_items(self):
        """Yield ``(index, value)`` for nonzero components in lexicographic index order."""
        for idx in itertools.product(range(self.n), repeat=self.rank):
            value = self.comps[idx]
            if not value.is_zero():
                yield idx, value

    def first_difference(self, other: CovariantTensor):
        """First index (lexicographic) where the two tensors differ, or ``None``."""
        for idx in itertools.product(range(self.n), repeat=self.rank):
            if self.comps[idx] != other.comps[idx]:
                return idx
        return None

    def evaluate(self, point) -> np.ndarray:
        out = np.empty(self.comps.shape, dtype=object)
        for idx, value in np.ndenumerate(self.comps):
            out[idx] = value.evaluate(point)
        return out

    def component_table(self, nonzero_only: bool = True) -> dict[str, str]:
        """Canonical strings keyed by 1-based index labels such as ``"1,2,1,2"``."""
        table = {}
        for idx in itertools.product(range(self.n), repeat=self.rank):
            value = self.comps[idx]
            if nonzero_only and value.is_zero():
                continue
            table[",".join(str(i + 1) for i in idx)] = str(value)
        return table

    def __repr__(self):
        return f"CovariantTensor(rank={self.rank}, n={self.n}, symmetry={self.symmetry!r})"

    # -- symmetry checks --------------------------------------------------

    def symmetry_violations(self) -> list[str]:
        """Names of the symmetry identities implied by the tag that fail."""
        c = self.comps
        failures = []

        def same(a, b):
            return all(x == y for x, y in zip(a.flat, b.flat))

        if self.symmetry == "symmetric-2" and not same(c, c.T):
            failures.append("A_ij = A_ji")
        elif self.symmetry == "two-form" and not same(c, -c.T):
            failures.append("A_ij = -A_ji")
        elif self.symmetry == "curvature-type-4":
            if not same(c, -np.transpose(c, (1, 0, 2, 3))):
                failures.append("T_hijk = -T_ihjk")
            if not same(c, -np.transpose(c, (0, 1, 3, 2))):
                failures.append("T_hijk = -T_hikj")
            if not same(c, np.transpose(c, (2, 3, 0, 1))):
                failures.append("T_hijk = T_jkhi")
        return failures

    def is_symmetric(self) -> bool:
        if self.rank != 2:
            return False
        return all(self.comps[i, j] == self.comps[j, i]
                   for i in range(self.n) for j in range(i + 1, self.n))


def _require_symmetric(*tensors):
    for t in tensors:
        if t.rank != 2 or not t.is_symmetric():
            raise SymmetryError("expected a symmetric (0,2) tensor")


def _check_charts(*tensors):
    first = tensors[0]
    for t in tensors[1:]:
        first._same_chart(t)


def _as_array(t):
    return t.comps if isinstance(t, CovariantTensor) else np.asarray(t, dtype=object)


# -- products ---------------------------------------------------------------

def kulkarni_nomizu(A: CovariantTensor, E: CovariantTensor) -> CovariantTensor:
    """``(A ^ E)_{hijk} = A_hk E_ij + A_ij E_hk - A_hj E_ik - A_ik E_hj``."""
    _check_charts(A, E)
    _require_symmetric(A, E)
    result = wedge_2_with_k(A, E)
    return CovariantTensor(A.chart, result.comps, "curvature-type-4")


def wedge_2_with_k(A: CovariantTensor, T: CovariantTensor) -> CovariantTensor:
    """Generalized product of a (0,2) tensor with a (0,k) tensor, k >= 2.

    ``(A ^ T)(X1, X2, Y1, Y2, ...) = A(X1,Y2) T(X2,Y1,...) + A(X2,Y1) T(X1,Y2,...)
    - A(X1,Y1) T(X2,Y2,...) - A(X2,Y2) T(X1,Y1,...)``; trailing slots of ``T``
    are carried along unchanged.
    """
    _check_charts(A, T)
    if T.rank < 2:
        raise ValueError("second factor must have rank >= 2")
    a, t = A.comps, T.comps
    comps = (np.einsum("hk,ij...->hijk...", a, t)
             + np.einsum("ij,hk...->hijk...", a, t)
             - np.einsum("hj,ik...->hijk...", a, t)
             - np.einsum("ik,hj...->hijk...", a, t))
    return CovariantTensor(A.chart, comps, "general")


def tensor_append(T: CovariantTensor, form: CovariantTensor) -> CovariantTensor:
    """``form (x) T`` with the 1-form slot stored last: ``out[..., l] = form_l T[...]``."""
    _check_charts(T, form)
    return CovariantTensor(T.chart, np.multiply.outer(T.comps, form.comps), "general")


def outer(*forms: CovariantTensor) -> CovariantTensor:
    comps = forms[0].comps
    for f in forms[1:]:
        comps = np.multiply.outer(comps, f.comps)
    return CovariantTensor(forms[0].chart, comps, "general")


def exterior_product(P: CovariantTensor, F: CovariantTensor) -> CovariantTensor:
    """``P ^ F = (P (x) F - F (x) P) / 2``."""
    _check_charts(P, F)
    t = np.multiply.outer(P.comps, F.comps)
    return CovariantTensor(P.chart, (t - t.T) * Fraction(1, 2), "two-form")


def exterior_derivative(P: CovariantTensor) -> CovariantTensor:
    """``(dP)_{ij} = d_i P_j - d_j P_i``."""
    n = P.n
    partial = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            partial[i, j] = P.comps[j].diff(i)
    return CovariantTensor(P.chart, partial - partial.T, "two-form")


def is_closed(P: CovariantTensor) -> bool:
    return exterior_derivative(P).is_zero()


def gradient(f: RationalFunction, chart: Chart) -> CovariantTensor:
    comps = np.empty(chart.dim, dtype=object)
    for i in range(chart.dim):
        comps[i] = f.diff(i)
    return CovariantTensor(chart, comps, "one-form")


def apply_operator(form: CovariantTensor, A: CovariantTensor, ginv) -> CovariantTensor:
    """``form(A X)`` for the endomorphism ``A`` with ``g(A X, Y) = A(X, Y)``.

    Components: ``out_x = A_{xq} g^{qp} form_p``.
    """
    ginv = _as_array(ginv)
    comps = np.einsum("xq,qp,p->x", A.comps, ginv, form.comps)
    return CovariantTensor(form.chart, comps, "one-form")


# -- second-level tensors ---------------------------------------------------

@dataclass(frozen=True)
class SecondLevelData:
    base: CovariantTensor
    squared: CovariantTensor
    trace: RationalFunction
    trace_squared: RationalFunction


def second_level(A: CovariantTensor, ginv) -> SecondLevelData:
    """``A2_ij = A_ik g^kl A_lj`` together with ``tr A`` and ``tr A2``."""
    ginv = _as_array(ginv)
    a = A.comps
    sq = np.einsum("ik,kl,lj->ij", a, ginv, a)
    trace = np.einsum("ij,ij->", ginv, a)
    trace2 = np.einsum("ij,ij->", ginv, sq)
    zero = A.chart.zero()
    return SecondLevelData(A, CovariantTensor(A.chart, sq, "symmetric-2"), zero + trace, zero + trace2)


# -- endomorphism actions ---------------------------------------------------

def _slot_letters(k):
    if k + 3 > len(_LETTERS):
        raise ValueError(f"rank {k} too large")
    return _LETTERS[:k]


def curvature_action(D: CovariantTensor, T: CovariantTensor, ginv) -> CovariantTensor:
    """``(D . T)_{i1..ik, x, y} = -sum_m D_{x y i_m}^p T_{i1..p..ik}``."""
    _check_charts(D, T)
    ginv = _as_array(ginv)
    raised = np.einsum("xymq,qp->xymp", D.comps, ginv)
    k = T.rank
    idx = _slot_letters(k)
    result = None
    for m in range(k):
        t_idx = idx[:m] + "z" + idx[m + 1:]
        term = np.einsum(f"xy{idx[m]}z,{t_idx}->{idx}xy", raised, T.comps)
        result = term if result is None else result + term
    return CovariantTensor(T.chart, -result, "general")


def q_action(A: CovariantTensor, T: CovariantTensor) -> CovariantTensor:
    """``Q(A,T)_{i1..ik, x, y} = sum_m [A_{x i_m} T_{..y..} - A_{y i_m} T_{..x..}]``."""
    _check_charts(A, T)
    k = T.rank
    idx = _slot_letters(k)
    result = None
    for m in range(k):
        with_y = idx[:m] + "y" + idx[m + 1:]
        with_x = idx[:m] + "x" + idx[m + 1:]
        term = (np.einsum(f"x{idx[m]},{with_y}->{idx}xy", A.comps, T.comps)
                - np.einsum(f"y{idx[m]},{with_x}->{idx}xy", A.comps, T.comps))
        result = term if result is None else result + term
    return CovariantTensor(T.chart, result, "general")


def wedge_vector_with_T(T: CovariantTensor, g: CovariantTensor) -> CovariantTensor:
    """Components of ``(X ^_T Y)(X1, ..., Xk)`` with ``x, y`` appended last.

    ``T(Y, X1, X3, ..., Xk) g(X, X2) - T(X, X1, X3, ..., Xk) g(Y, X2)``.
    """
    _check_charts(T, g)
    k = T.rank
    if k < 2:
        raise ValueError("X ^_T Y needs rank >= 2")
    idx = _slot_letters(k)
    rest = idx[2:]
    a, b = idx[0], idx[1]
    out = idx + "xy"
    comps = (np.einsum(f"y{a}{rest},x{b}->{out}", T.comps, g.comps)
             - np.einsum(f"x{a}{rest},y{b}->{out}", T.comps, g.comps))
    return CovariantTensor(T.chart, comps, "general")


def contract(T: CovariantTensor, slots: tuple[int, int], ginv) -> CovariantTensor | RationalFunction:
    """Contract slots ``(a, b)`` (0-based) with the inverse metric."""
    a, b = slots
    k = T.rank
    if a == b or not (0 <= a < k and 0 <= b < k):
        raise ValueError(f"invalid slot pair {slots} for rank {k}")
    ginv = _as_array(ginv)
    idx = list(_slot_letters(k))
    idx[a], idx[b] = "y", "z"
    out = "".join(c for c in idx if c not in "yz")
    comps = np.einsum(f"{''.join(idx)},yz->{out}", T.comps, ginv)
    if k == 2:
        return T.chart.zero() + comps
    tag = "symmetric-2" if k == 4 and T.symmetry == "curvature-type-4" else "general"
    return CovariantTensor(T.chart, comps, tag)


def raise_index(form: CovariantTensor, ginv) -> np.ndarray:
    """Contravariant components ``V^p = g^{pq} form_q`` (returned as a bare array)."""
    return np.einsum("pq,q->p", _as_array(ginv), form.comps)
