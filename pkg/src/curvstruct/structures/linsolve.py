"""Exact linear solves over the rational-function field.

A structure equation ``nabla T = c_1 (x) B_1 + ... + c_m (x) B_m`` splits, for
each derivative direction ``l``, into one linear system per direction: every
index tuple of the basis tensors gives a row ``sum_b c_{b,l} B_b[I] = lhs[I, l]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import flint
import numpy as np

from ..symbolic import RationalFunction, irreducible_factors
from ..tensor import CovariantTensor

UNIQUE = "unique"
AFFINE = "affine"
INCONSISTENT = "inconsistent"
DEGENERATE_LHS = "degenerate-lhs"


@dataclass
class DirectionSolution:
    """Solution set of the linear system for one derivative direction."""

    direction: int | None
    status: str
    particular: tuple[RationalFunction, ...] | None = None
    null_basis: list[tuple[RationalFunction, ...]] = field(default_factory=list)
    free_columns: list[int] = field(default_factory=list)
    pivots: list[RationalFunction] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return self.status != INCONSISTENT


@dataclass
class SolutionFamily:
    """Affine solution family of coefficient 1-forms, one system per direction."""

    labels: tuple[str, ...]
    basis_names: tuple[str, ...]
    directions: list[DirectionSolution]
    excluded_loci: list[str] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return all(d.consistent for d in self.directions)

    @property
    def lhs_zero(self) -> bool:
        return all(d.status == DEGENERATE_LHS for d in self.directions)

    @property
    def null_dimensions(self) -> list[int]:
        return [len(d.null_basis) for d in self.directions if d.consistent]

    @property
    def is_unique(self) -> bool:
        return self.consistent and all(len(d.null_basis) == 0 for d in self.directions)

    def member(self, chart, params=None) -> dict[str, CovariantTensor]:
        """Coefficient 1-forms for one member of the family.

        ``params[l]`` lists the multipliers of the null-space generators in
        direction ``l`` (missing entries default to zero, which selects the
        particular solution).
        """
        if not self.consistent:
            raise ValueError("family is inconsistent; it has no members")
        n = len(self.directions)
        comps = {label: np.empty(n, dtype=object) for label in self.labels}
        for l, d in enumerate(self.directions):
            values = list(d.particular)
            chosen = (params or {}).get(l, ())
            for t, vec in zip(chosen, d.null_basis):
                values = [v + t * w for v, w in zip(values, vec)]
            for label, v in zip(self.labels, values):
                comps[label][l] = v
        return {label: CovariantTensor(chart, c, "one-form") for label, c in comps.items()}

    def member_with_free_form(self, chart, form: CovariantTensor, generator: int = 0):
        """Member obtained by setting the ``generator``-th free parameter to ``form_l``."""
        return self.member(chart, {l: [chart.zero()] * generator + [form[l]]
                                   for l in range(len(self.directions))})


def _reduce_row(row, pivots):
    for col, prow in pivots:
        factor = row[col]
        if not factor.is_zero():
            row = [x - factor * y if not y.is_zero() else x for x, y in zip(row, prow)]
    return row


def _loci_of(value: RationalFunction, names) -> list[str]:
    return irreducible_factors(value.num, names) + irreducible_factors(value.den, names)


def solve_rows(rows, ncols, zero: RationalFunction):
    """Gaussian elimination on augmented rows ``[c_1, ..., c_m, rhs]``.

    Rows are consumed in the given order; the pivot of each new row is its
    first nonzero coefficient.  Returns ``(status, particular, null_basis,
    free_columns, pivot_values)``; ``particular`` is ``None`` when inconsistent.
    Elimination stops early once the rank reaches ``ncols``; callers must then
    re-substitute the unique candidate to confirm consistency.
    """
    pivots: list[tuple[int, list]] = []
    pivot_values = []
    for raw in rows:
        row = _reduce_row(list(raw), pivots)
        col = next((c for c in range(ncols) if not row[c].is_zero()), None)
        if col is None:
            if not row[ncols].is_zero():
                return INCONSISTENT, None, [], [], pivot_values
            continue
        p = row[col]
        pivot_values.append(p)
        inv = p.inverse()
        row = [x * inv for x in row]
        pivots.append((col, row))
        if len(pivots) == ncols:
            break
    # full reduction to RREF
    for j, (col, prow) in enumerate(pivots):
        for i, (ocol, orow) in enumerate(pivots):
            if i != j and not orow[col].is_zero():
                factor = orow[col]
                pivots[i] = (ocol, [x - factor * y for x, y in zip(orow, prow)])
    pivot_cols = {col: row for col, row in pivots}
    free = [c for c in range(ncols) if c not in pivot_cols]
    particular = [zero] * ncols
    for col, row in pivot_cols.items():
        particular[col] = row[ncols]
    null_basis = []
    for f in free:
        vec = [zero] * ncols
        vec[f] = zero + 1
        for col, row in pivot_cols.items():
            vec[col] = -row[f]
        null_basis.append(tuple(vec))
    status = UNIQUE if not free else AFFINE
    return status, tuple(particular), null_basis, free, pivot_values


def _rows_for(arrays, rhs, n, rank):
    for idx in itertools.product(range(n), repeat=rank):
        coeffs = [a[idx] for a in arrays]
        r = rhs[idx]
        if r.is_zero() and all(c.is_zero() for c in coeffs):
            continue
        yield coeffs + [r]


def combination(arrays, coeffs) -> np.ndarray:
    total = None
    for a, c in zip(arrays, coeffs):
        if c.is_zero():
            continue
        term = a * c
        total = term if total is None else total + term
    if total is None:
        return np.full(arrays[0].shape, coeffs[0] * 0, dtype=object)
    return total


def _residual_zero(arrays, coeffs, rhs) -> bool:
    combo = combination(arrays, coeffs)
    return all((a - b).is_zero() for a, b in zip(combo.flat, rhs.flat))


# fixed evaluation points for rank certificates (deterministic)
_CERT_POINTS = ((7, 11, 13, 17, 19, 23, 29, 31), (101, 37, 53, 89, 71, 43, 61, 97))


def _value_at(rf: RationalFunction, point):
    den = rf.den(*point)
    if den == 0:
        return None
    return flint.fmpq(rf.num(*point), den)


def certify_inconsistent(rhs: np.ndarray, arrays: list[np.ndarray]) -> bool:
    """True when the system is provably inconsistent over the function field.

    If the augmented matrix specialised at an integer point has rank
    ``ncols + 1``, some maximal minor is a nonzero rational function, so the
    generic augmented rank exceeds the generic coefficient rank (at most
    ``ncols``).  A ``False`` result proves nothing.
    """
    ncols = len(arrays)
    nvars = rhs.flat[0].nvars
    for base in _CERT_POINTS:
        point = [flint.fmpz(v) for v in (base * (nvars // len(base) + 1))[:nvars]]
        entries = []
        ok = True
        for idx in np.ndindex(rhs.shape):
            row = [a[idx] for a in arrays] + [rhs[idx]]
            if all(v.is_zero() for v in row):
                continue
            values = [_value_at(v, point) for v in row]
            if any(v is None for v in values):
                ok = False
                break
            entries.append(values)
        if not ok or not entries:
            continue
        mat = flint.fmpq_mat(len(entries), ncols + 1, [v for row in entries for v in row])
        if mat.rank() == ncols + 1:
            return True
    return False


def solve_single(rhs: np.ndarray, arrays: list[np.ndarray], zero: RationalFunction,
                 direction: int | None = None) -> DirectionSolution:
    """Solve ``sum_b c_b arrays[b] = rhs`` for scalar functions ``c_b``."""
    ncols = len(arrays)
    n = rhs.shape[0]
    lhs_zero = all(v.is_zero() for v in rhs.flat)
    if not lhs_zero and certify_inconsistent(rhs, arrays):
        return DirectionSolution(direction, INCONSISTENT)
    rows = _rows_for(arrays, rhs, n, rhs.ndim)
    status, particular, null_basis, free, pivots = solve_rows(rows, ncols, zero)
    if status == INCONSISTENT:
        return DirectionSolution(direction, INCONSISTENT, pivots=pivots)
    # confirm exactly; also catches the early-exit path
    if not _residual_zero(arrays, particular, rhs):
        return DirectionSolution(direction, INCONSISTENT, pivots=pivots)
    zeros = np.full(rhs.shape, zero, dtype=object)
    for vec in null_basis:
        if not _residual_zero(arrays, vec, zeros):
            raise AssertionError("null-space generator failed re-substitution")
    if lhs_zero:
        status = DEGENERATE_LHS
    return DirectionSolution(direction, status, particular, null_basis, free, pivots)


def solve_linear_family(lhs: CovariantTensor, basis: list[CovariantTensor],
                        labels=None, basis_names=None) -> SolutionFamily:
    """Solve ``lhs[..., l] = sum_b c_{b,l} basis_b`` independently for every direction ``l``.

    ``lhs`` has rank ``k + 1`` with the direction slot last; every basis tensor
    has rank ``k``.
    """
    if any(b.rank + 1 != lhs.rank for b in basis):
        raise ValueError("basis tensors must have rank one less than the left-hand side")
    chart = lhs.chart
    zero = chart.zero()
    arrays = [b.comps for b in basis]
    labels = tuple(labels or (f"c{i + 1}" for i in range(len(basis))))
    basis_names = tuple(basis_names or (f"B{i + 1}" for i in range(len(basis))))
    directions = [solve_single(lhs.comps[..., l], arrays, zero, l) for l in range(chart.dim)]
    return SolutionFamily(labels, basis_names, directions, collect_loci(directions, chart.names))


def collect_loci(directions, names) -> list[str]:
    loci = set()
    for d in directions:
        for p in d.pivots:
            loci.update(_loci_of(p, names))
        for v in d.particular or ():
            loci.update(irreducible_factors(v.den, names))
    return sorted(loci, key=lambda s: (len(s), s))
