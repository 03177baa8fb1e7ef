"""Derivation and verification of the monic quintic operator relation
w^2 = z^5 + c4*z^4 + ... + c0 satisfied by a commuting (order-4, order-10)
pair, plus the rank analysis of the parameter-to-curve map C^6 -> C^5.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import NoRelationError, NotCommutingError, UsageError
from .exactalg import QQ, ParamPoly, guarded_operation, rat
from .weylcore import (
    SAMPLE_SIZE,
    Verdict,
    WeylOp,
    horner_constpoly,
    random_alpha_points,
    schwartz_zippel_bound,
)


@dataclass(frozen=True)
class SpectralCurve:
    """Constants c0..c4 of the monic quintic relation, stored canonically."""

    c: tuple[ParamPoly, ...]

    def __post_init__(self):
        if len(self.c) != 5:
            raise UsageError("a spectral curve stores exactly five constants c0..c4")

    def specialize(self, point) -> "SpectralCurve":
        return SpectralCurve(tuple(ParamPoly.const(p.specialize(point)) for p in self.c))

    def constants(self):
        """c0..c4 as exact rationals (requires fully specialized constants)."""
        return tuple(p.const_value() for p in self.c)

    def __str__(self) -> str:
        names = [f"c{k}" for k in range(5)]
        return "; ".join(f"{n} = {p}" for n, p in zip(names, self.c))


def derive_curve(X: WeylOp, Y: WeylOp, mode: str = "symbolic",
                 point=None) -> SpectralCurve:
    """Unique constants with Y^2 = X^5 + c4*X^4 + ... + c0, found by a
    triangular pivot solve over the D-order filtration and then verified
    against the full identity.

    In ``rational-point`` mode the operators are specialized at ``point``
    first and the constants come out rational.
    """
    if mode == "rational-point":
        if point is not None:
            X = X.specialize_params(point)
            Y = Y.specialize_params(point)
    elif mode != "symbolic":
        raise UsageError(f"unknown derivation mode {mode!r}")

    residual = X.commutator(Y)
    if not residual.is_zero():
        raise NotCommutingError(
            f"inputs do not commute: commutator has order {residual.order}")
    n = X.order
    if X.is_zero() or n < 1:
        raise NoRelationError("the order-4 slot operator must have positive order")
    if 2 * Y.order != 5 * n:
        raise NoRelationError(
            f"order mismatch: 2*ord(Y) = {2 * Y.order} but 5*ord(X) = {5 * n}")
    if Y.leading_coeff() ** 2 != X.leading_coeff() ** 5:
        raise NoRelationError("leading coefficients admit no monic quintic relation")

    with guarded_operation():
        powers = [WeylOp.one()]
        for _ in range(5):
            powers.append(X * powers[-1])
        residual = Y * Y - powers[5]
        constants = [ParamPoly.zero()] * 5
        for i in range(4, -1, -1):
            if residual.order > i * n:
                raise NoRelationError(
                    f"residual order {residual.order} exceeds {i}*ord(X)")
            constants[i] = _pivot_solve(residual, powers[i], i * n)
            if constants[i]:
                residual = residual - powers[i].scale(constants[i])
        if not residual.is_zero():
            raise NoRelationError("pivot solution fails the full identity")
    return SpectralCurve(tuple(constants))


def _pivot_solve(residual: WeylOp, xpower: WeylOp, dpow: int) -> ParamPoly:
    """Solve c * xpower = residual at the D^dpow level for the constant c.

    Scans x-power pivot positions, preferring one where the coefficient of
    xpower is a nonzero rational so no polynomial division is needed.
    """
    lead = xpower.coefficient(dpow)
    res = residual.coefficient(dpow)
    if res.is_zero():
        # residual has nothing at this level; c = 0 is consistent
        return ParamPoly.zero()
    for k in range(lead.degree() + 1):
        p = lead.coeff(k)
        if not p.is_zero() and p.is_const():
            return res.coeff(k) * (QQ(1) / p.const_value())
    for k in range(lead.degree(), -1, -1):
        p = lead.coeff(k)
        if p.is_zero():
            continue
        q = res.coeff(k).divexact(p)
        if q is not None:
            return q
    raise NoRelationError(f"no usable pivot at D-order {dpow}")


def verify_curve(X: WeylOp, Y: WeylOp, curve: SpectralCurve, mode: str = "random",
                 trials: int = 20, seed: int = 0) -> Verdict:
    """Check Y^2 - (X^5 + sum c_i X^i) = 0 exactly or at seeded random points."""
    monic = list(curve.c) + [ParamPoly.one()]
    if mode == "symbolic":
        with guarded_operation():
            residual = Y * Y - horner_constpoly(monic, X)
        detail = "" if residual.is_zero() else f"residual order {residual.order}"
        return Verdict(residual.is_zero(), "symbolic", detail=detail)
    if mode != "random":
        raise UsageError(f"unknown verification mode {mode!r}")
    dx = max(X.alpha_degree(), 0)
    dy = max(Y.alpha_degree(), 0)
    degree = max([2 * dy, 5 * dx] +
                 [max(c.total_degree(), 0) + i * dx for i, c in enumerate(curve.c)])
    bound = schwartz_zippel_bound(degree, trials)
    for i, pt in enumerate(random_alpha_points(trials, seed)):
        Xs = X.specialize_params(pt)
        Ys = Y.specialize_params(pt)
        cs = [ParamPoly.const(c.specialize(pt)) for c in curve.c]
        residual = Ys * Ys - horner_constpoly(cs + [ParamPoly.one()], Xs)
        if not residual.is_zero():
            return Verdict(False, "random", trials, seed, bound,
                           f"counterexample at trial {i}: alpha={pt}")
    return Verdict(True, "random", trials, seed, bound,
                   f"degree bound {degree} over {SAMPLE_SIZE} values/coordinate")


# ---------------------------------------------------------------------------
# tangent map of the parameter-to-curve morphism


@dataclass(frozen=True)
class JacobianMatrix:
    """5x6 matrix of exact partials, entry (i, j) = d c_i / d a_j."""

    entries: tuple[tuple[ParamPoly, ...], ...]

    def entry(self, i: int, j: int) -> ParamPoly:
        """Row i in 0..4 (constant index), column j in 1..6 (parameter index)."""
        return self.entries[i][j - 1]

    def at_point(self, point):
        """The specialized rational 5x6 matrix as row lists."""
        return [[p.specialize(point) for p in row] for row in self.entries]


def jacobian_matrix(curve: SpectralCurve) -> JacobianMatrix:
    rows = tuple(tuple(c.partial(j) for j in range(1, 7)) for c in curve.c)
    return JacobianMatrix(rows)


def rank_at_point(jac: JacobianMatrix, point) -> int:
    """Exact rank of the specialized matrix via rational elimination."""
    return linalg.rank(jac.at_point(point), 6)


@dataclass(frozen=True)
class DominanceReport:
    """Seeded rank scan of the tangent map, unrestricted and on the a1 = 0 slice."""

    seed: int
    points: tuple
    ranks: tuple[int, ...]
    restricted_points: tuple
    restricted_ranks: tuple[int, ...]

    @property
    def max_rank(self) -> int:
        return max(self.ranks, default=0)

    @property
    def restricted_max_rank(self) -> int:
        return max(self.restricted_ranks, default=0)

    def describe(self) -> str:
        lines = [f"seed={self.seed}", "unrestricted scan:"]
        for pt, r in zip(self.points, self.ranks):
            lines.append(f"  rank {r} at alpha={pt}")
        lines.append(f"max rank {self.max_rank}")
        lines.append("restricted scan (a1 = 0):")
        for pt, r in zip(self.restricted_points, self.restricted_ranks):
            lines.append(f"  rank {r} at alpha={pt}")
        lines.append(f"restricted max rank {self.restricted_max_rank}")
        return "\n".join(lines)


def dominance_scan(trials: int, seed: int = 0,
                   curve: SpectralCurve | None = None) -> DominanceReport:
    """Rank the tangent map at seeded random integer points.

    Unrestricted points keep a1 away from zero (a full-rank point witnesses
    dominance); the restricted scan forces a1 = 0 and records the degenerate
    ranks separately.
    """
    if trials < 1:
        raise UsageError("trials must be >= 1")
    if curve is None:
        from .catalog import curve_coeffs
        curve = SpectralCurve(curve_coeffs().c)
    jac = jacobian_matrix(curve)
    points = tuple(random_alpha_points(trials, seed, nonzero=(1,)))
    ranks = tuple(rank_at_point(jac, pt) for pt in points)
    restricted = tuple((0,) + pt[1:] for pt in random_alpha_points(trials, seed + 1))
    restricted_ranks = tuple(rank_at_point(jac, pt) for pt in restricted)
    return DominanceReport(seed, points, ranks, restricted, restricted_ranks)


# ---------------------------------------------------------------------------
# odd-part normalization of a centralizer element


def odd_normalize(X: WeylOp, M: WeylOp) -> WeylOp:
    """Given commuting X and an order-10 element M = s*Yhat + q(X) of its
    centralizer, strip the polynomial-in-X part and rescale so the result
    squares to a monic quintic in X.

    Works over fully specialized (rational) coefficients.  The general
    relation e*M^2 + (g2*X^2 + g1*X + g0)*M = X^5 + h4*X^4 + ... + h0 is
    solved exactly; then s = 1/sqrt(e) and Yhat = (M - q(X))/s with
    q = -g/(2e).
    """
    for op in (X, M):
        for c in op.coeffs:
            for p in c.coeffs:
                if not p.is_const():
                    raise UsageError("odd_normalize requires rational coefficients")
    with guarded_operation():
        xpow = [WeylOp.one()]
        for _ in range(5):
            xpow.append(X * xpow[-1])
        m2 = M * M
        gcols = [xpow[2] * M, xpow[1] * M, M]
        # unknowns: e, g2, g1, g0, h4..h0 with equation
        #   e*M^2 + g2*X^2*M + g1*X*M + g0*M - sum h_i X^i = X^5
        cols = [m2] + gcols + [-xpow[4], -xpow[3], -xpow[2], -xpow[1], -xpow[0]]
        target = xpow[5]
        positions = set()
        for op in cols + [target]:
            for dpow, xp, _exps, _c in op.terms_canonical():
                positions.add((dpow, xp))
        rows, rhs = [], []
        for (dpow, xp) in sorted(positions, reverse=True):
            rows.append([c.param_coefficient(dpow, xp).const_value() for c in cols])
            rhs.append(target.param_coefficient(dpow, xp).const_value())
        sol, null = linalg.solve_affine(rows, rhs)
        if sol is None:
            raise NoRelationError("no monic quintic relation in the coset of M")
        if null:
            raise NoRelationError("quadratic relation for M is not unique")
        e, g2, g1, g0 = sol[0], sol[1], sol[2], sol[3]
        if e <= 0:
            raise NoRelationError("relation has non-positive leading scale")
        s = _exact_sqrt(QQ(1) / e)
        if s is None:
            raise NoRelationError("leading scale is not a perfect rational square")
        q_ops = xpow[2].scale(-g2 / (2 * e)) + xpow[1].scale(-g1 / (2 * e)) \
            + WeylOp.const(-g0 / (2 * e))
        return (M - q_ops).scale(QQ(1) / s)


def _exact_sqrt(q):
    """Exact rational square root, or None."""
    num, den = int(q.numerator), int(q.denominator)
    if num < 0:
        return None
    rn = _isqrt(num)
    rd = _isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return rat(rn, rd)


def _isqrt(n: int) -> int:
    import math
    return math.isqrt(n)
