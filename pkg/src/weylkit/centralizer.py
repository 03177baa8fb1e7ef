"""Search for operators of prescribed order commuting with a given operator,
by exact linear algebra over an ansatz with bounded-degree x-polynomial
coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import linalg
from .errors import UsageError
from .exactalg import QQ, XPoly, guarded_operation
from .spectral import SpectralCurve, derive_curve, odd_normalize
from .weylcore import WeylOp


@dataclass(frozen=True)
class Ansatz:
    """Search space: operators of order <= target_order whose D^i coefficient
    has x-degree <= degree_bounds[i]."""

    target_order: int
    degree_bounds: tuple[int, ...]

    def __post_init__(self):
        if self.target_order < 0:
            raise UsageError("target order must be nonnegative")
        if len(self.degree_bounds) != self.target_order + 1:
            raise UsageError("need one degree bound per D-power 0..target_order")
        if any(d < 0 for d in self.degree_bounds):
            raise UsageError("degree bounds must be nonnegative")

    @property
    def unknown_count(self) -> int:
        return sum(d + 1 for d in self.degree_bounds)

    def unknowns(self):
        """(dpow, xpow) slots in canonical descending coefficient order."""
        for i in range(self.target_order, -1, -1):
            for j in range(self.degree_bounds[i], -1, -1):
                yield i, j


def default_degree_bounds(n: int) -> tuple[int, ...]:
    """Default x-degree bounds for an order-n search.

    max(i, n - i) + 2*ceil(n/4) contains both known coefficient shapes with
    slack: leading blocks whose x-degree grows with the D-power (quadratic
    leading coefficient) and monic-block operators whose x-degree grows toward
    the low D-powers.
    """
    slack = 2 * math.ceil(n / 4)
    return tuple(max(i, n - i) + slack for i in range(n + 1))


def _require_rational(L: WeylOp) -> None:
    for c in L.coeffs:
        for p in c.coeffs:
            if not p.is_const():
                raise UsageError(
                    "centralizer search needs fully specialized (rational) "
                    "coefficients; pass an alpha point")


@dataclass(frozen=True)
class CommutationSystem:
    """Exact homogeneous linear system encoding [L, M] = 0 over the ansatz."""

    operator: WeylOp
    ansatz: Ansatz
    slots: tuple[tuple[int, int], ...]
    rows: tuple
    row_positions: tuple[tuple[int, int], ...]


def build_commutation_system(L: WeylOp, ansatz: Ansatz) -> CommutationSystem:
    """Linearize [L, M] = 0 in the unknown coefficients of M.

    Column k holds the commutator of L with the monomial x^j D^i of unknown
    slot k; rows run over all (D-power, x-power) positions that occur.
    """
    _require_rational(L)
    slots = tuple(ansatz.unknowns())
    with guarded_operation():
        brackets = [L.commutator(WeylOp.monomial(1, j, i)) for (i, j) in slots]
    positions = set()
    for op in brackets:
        for dpow, xpow, _exps, _c in op.terms_canonical():
            positions.add((dpow, xpow))
    row_positions = tuple(sorted(positions, reverse=True))
    rows = tuple(
        tuple(b.param_coefficient(dpow, xpow).const_value() for b in brackets)
        for (dpow, xpow) in row_positions
    )
    return CommutationSystem(L, ansatz, slots, rows, row_positions)


@dataclass(frozen=True)
class CommutingBasis:
    """Reduced echelon basis of the commuting space inside the ansatz.

    Every element has been re-verified to commute with the input exactly;
    the verification is independent of the linear solve.
    """

    operator: WeylOp
    ansatz: Ansatz
    basis: tuple[WeylOp, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def of_order(self, n: int) -> tuple[WeylOp, ...]:
        return tuple(op for op in self.basis if op.order == n)


def solve_nullspace(system: CommutationSystem) -> CommutingBasis:
    """Exact reduced nullspace of the commutation system, as operators."""
    vectors = linalg.nullspace([list(r) for r in system.rows], len(system.slots))
    ops = []
    for vec in vectors:
        coeffs = [[QQ(0)] * (d + 1) for d in system.ansatz.degree_bounds]
        for (i, j), v in zip(system.slots, vec):
            coeffs[i][j] = v
        op = WeylOp(tuple(XPoly(c) for c in coeffs))
        if not system.operator.commutator(op).is_zero():
            # the solve is exact, so this indicates a corrupted system
            raise UsageError("nullspace candidate fails exact re-verification")
        ops.append(op)
    ops.sort(key=lambda op: (op.order if op.coeffs else -1), reverse=True)
    return CommutingBasis(system.operator, system.ansatz, tuple(ops))


@dataclass(frozen=True)
class CentralizerReport:
    """Outcome of a commuting-operator search, including the not-found case."""

    found: bool
    target_order: int
    alpha_point: tuple | None
    bounds_tried: tuple[tuple[int, ...], ...]
    basis: CommutingBasis | None
    witnesses: tuple[WeylOp, ...] = ()
    curve: SpectralCurve | None = None
    detail: str = ""

    def describe(self) -> str:
        lines = []
        if self.alpha_point is not None:
            lines.append(f"alpha point: {self.alpha_point}")
        lines.append(f"target order: {self.target_order}")
        for b in self.bounds_tried:
            lines.append(f"degree bounds tried: {list(b)}")
        if self.basis is not None:
            lines.append(f"commuting space dimension: {self.basis.dimension}")
        if self.found:
            lines.append(f"order-{self.target_order} witnesses: {len(self.witnesses)}")
        else:
            lines.append("no element of the target order found within the bounds")
        if self.curve is not None:
            lines.append(f"derived curve: {self.curve}")
        if self.detail:
            lines.append(self.detail)
        return "\n".join(lines)


def find_commuting_operators(L: WeylOp, target_order: int,
                             degree_bounds=None, alpha_point=None,
                             derive_pair_curve: bool = True) -> CentralizerReport:
    """Specialize L if needed, search the bounded ansatz for commuting
    operators, and keep the elements of exact target order.

    When the pair has orders (4, 10) and a witness exists, also derives the
    spectral curve of the pair from the odd-normalized witness.
    """
    if target_order < 1:
        raise UsageError("target order must be >= 1")
    if alpha_point is not None:
        L = L.specialize_params(alpha_point)
        alpha_point = tuple(alpha_point)
    _require_rational(L)
    bounds = tuple(degree_bounds) if degree_bounds is not None \
        else default_degree_bounds(target_order)
    ansatz = Ansatz(target_order, bounds)
    system = build_commutation_system(L, ansatz)
    basis = solve_nullspace(system)
    witnesses = basis.of_order(target_order)
    if not witnesses:
        return CentralizerReport(
            found=False, target_order=target_order, alpha_point=alpha_point,
            bounds_tried=(bounds,), basis=basis,
            detail="commuting space contains no element of the target order")
    curve = None
    detail = ""
    if derive_pair_curve and L.order == 4 and target_order == 10:
        generator = odd_normalize(L, witnesses[0])
        curve = derive_curve(L, generator, mode="rational-point")
        detail = "curve derived from the odd-normalized order-10 witness"
    return CentralizerReport(
        found=True, target_order=target_order, alpha_point=alpha_point,
        bounds_tried=(bounds,), basis=basis, witnesses=witnesses,
        curve=curve, detail=detail)
