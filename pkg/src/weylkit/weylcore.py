"""Normal-form arithmetic in the first Weyl algebra with x-polynomial
coefficients: product, commutator, powers, total symbol, formal adjoint, and
parameter specialization.

An operator is stored canonically as a tuple of XPoly coefficients indexed by
the power of D (the derivative symbol), i.e. with all x-dependence written to
the left of the D-powers.  The generators satisfy [D, x] = 1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import UsageError
from .exactalg import (
    QQ,
    ParamPoly,
    XPoly,
    _as_ppoly,
    guarded_operation,
    rat,
)

#: order of the zero operator (a sentinel distinct from any true order)
NEG_INF = float("-inf")

#: sampling window for randomized identity testing
SAMPLE_LO = -999
SAMPLE_HI = 999
SAMPLE_SIZE = SAMPLE_HI - SAMPLE_LO + 1


class WeylOp:
    """Differential operator sum(a_i(x) D^i) in canonical normal form."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=(), *, _raw: bool = False):
        if _raw:
            self._coeffs = coeffs
            return
        cs = [c if isinstance(c, XPoly) else XPoly.const(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self._coeffs = tuple(cs)

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero() -> "WeylOp":
        return _W_ZERO

    @staticmethod
    def one() -> "WeylOp":
        return _W_ONE

    @staticmethod
    def x() -> "WeylOp":
        return _W_X

    @staticmethod
    def d() -> "WeylOp":
        return _W_D

    @staticmethod
    def const(value) -> "WeylOp":
        return WeylOp((XPoly.const(value),))

    @staticmethod
    def from_xpoly(p: XPoly) -> "WeylOp":
        """The multiplication operator by the x-polynomial p."""
        if p.is_zero():
            return _W_ZERO
        return WeylOp((p,), _raw=True)

    @staticmethod
    def monomial(coeff, xpow: int, dpow: int) -> "WeylOp":
        """coeff * x^xpow * D^dpow in one step."""
        p = XPoly.monomial(coeff, xpow)
        if p.is_zero():
            return _W_ZERO
        return WeylOp((XPoly.zero(),) * dpow + (p,), _raw=True)

    # -- accessors --------------------------------------------------------------

    @property
    def coeffs(self) -> tuple[XPoly, ...]:
        return self._coeffs

    @property
    def order(self):
        """Highest D-power with nonzero coefficient; zero operator reports -inf."""
        return len(self._coeffs) - 1 if self._coeffs else NEG_INF

    def coefficient(self, dpow: int) -> XPoly:
        if 0 <= dpow < len(self._coeffs):
            return self._coeffs[dpow]
        return XPoly.zero()

    def param_coefficient(self, dpow: int, xpow: int) -> ParamPoly:
        return self.coefficient(dpow).coeff(xpow)

    def leading_coeff(self) -> XPoly:
        if not self._coeffs:
            return XPoly.zero()
        return self._coeffs[-1]

    def is_zero(self) -> bool:
        return not self._coeffs

    def alpha_degree(self) -> int:
        """Max total degree in the parameters across all coefficients."""
        return max((c.alpha_degree() for c in self._coeffs), default=-1)

    def x_degree(self) -> int:
        return max((c.degree() for c in self._coeffs), default=-1)

    def term_count(self) -> int:
        return sum(c.term_count() for c in self._coeffs)

    def terms_canonical(self):
        """Yield (dpow, xpow, exponent-tuple, coeff) in descending canonical order."""
        for dpow in range(len(self._coeffs) - 1, -1, -1):
            xc = self._coeffs[dpow]
            for xpow in range(xc.degree(), -1, -1):
                for exps, coeff in xc.coeff(xpow).terms():
                    yield dpow, xpow, exps, coeff

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        other = _as_weylop(other)
        if other is NotImplemented:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    # -- linear structure ---------------------------------------------------------

    def __add__(self, other) -> "WeylOp":
        other = _as_weylop(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, p in enumerate(b):
            out[i] = out[i] + p
        while out and out[-1].is_zero():
            out.pop()
        return WeylOp(tuple(out), _raw=True)

    __radd__ = __add__

    def __neg__(self) -> "WeylOp":
        return WeylOp(tuple(-c for c in self._coeffs), _raw=True)

    def __sub__(self, other) -> "WeylOp":
        other = _as_weylop(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "WeylOp":
        return (-self) + other

    def scale(self, s) -> "WeylOp":
        """Coefficientwise multiplication by a scalar (rational or ParamPoly)."""
        p = _as_ppoly(s)
        if p is NotImplemented:
            raise UsageError(f"cannot scale by {s!r}")
        if p.is_zero():
            return _W_ZERO
        with guarded_operation():
            return WeylOp(tuple(c * p for c in self._coeffs), _raw=True)

    # -- multiplicative structure ---------------------------------------------------

    def __mul__(self, other) -> "WeylOp":
        if isinstance(other, WeylOp):
            return _normal_ordered_product(self, other)
        if isinstance(other, XPoly):
            return _normal_ordered_product(self, WeylOp.from_xpoly(other))
        p = _as_ppoly(other)
        if p is NotImplemented:
            return NotImplemented
        return self.scale(p)

    def __rmul__(self, other) -> "WeylOp":
        if isinstance(other, XPoly):
            return _normal_ordered_product(WeylOp.from_xpoly(other), self)
        p = _as_ppoly(other)
        if p is NotImplemented:
            return NotImplemented
        return self.scale(p)

    def __pow__(self, n: int) -> "WeylOp":
        if not isinstance(n, int) or n < 0:
            raise UsageError("operator exponent must be a nonnegative integer")
        with guarded_operation():
            result = _W_ONE
            for _ in range(n):
                result = result * self
            return result

    def commutator(self, other: "WeylOp") -> "WeylOp":
        """[self, other] = self*other - other*self, exact."""
        other = _as_weylop(other)
        if other is NotImplemented:
            raise UsageError("commutator requires an operator")
        with guarded_operation():
            return self * other - other * self

    # -- structure maps ---------------------------------------------------------------

    def total_symbol(self) -> "TotalSymbol":
        """Replace D^i by the commuting variable xi^i in the canonical form."""
        terms = {}
        for i, c in enumerate(self._coeffs):
            for k in range(c.degree() + 1):
                p = c.coeff(k)
                if not p.is_zero():
                    terms[(k, i)] = p
        return TotalSymbol(terms)

    def adjoint(self) -> "WeylOp":
        """Formal adjoint sum((-1)^i D^i a_i(x)), re-normal-ordered."""
        with guarded_operation():
            out = [XPoly.zero()] * len(self._coeffs)
            for i, a in enumerate(self._coeffs):
                if a.is_zero():
                    continue
                sign = -1 if i % 2 else 1
                der = a
                c = 1
                for k in range(i + 1):
                    if k:
                        c = c * (i - k + 1) // k
                        der = der.diff()
                        if der.is_zero():
                            break
                    out[i - k] = out[i - k] + der * rat(sign * c)
            while out and out[-1].is_zero():
                out.pop()
            return WeylOp(tuple(out), _raw=True)

    def specialize_params(self, point) -> "WeylOp":
        """Evaluate all parameter coefficients at a rational 6-tuple."""
        out = [c.specialize_params(point) for c in self._coeffs]
        while out and out[-1].is_zero():
            out.pop()
        return WeylOp(tuple(out), _raw=True)

    # -- formatting ----------------------------------------------------------------------

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for i in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[i]
            if c.is_zero():
                continue
            ds = "" if i == 0 else ("D" if i == 1 else f"D^{i}")
            cs = str(c)
            if not ds:
                parts.append(cs)
            elif cs == "1":
                parts.append(ds)
            elif cs == "-1":
                parts.append(f"-{ds}")
            elif c.degree() <= 0 or c.term_count() == 1:
                parts.append(f"{cs}*{ds}")
            else:
                parts.append(f"({cs})*{ds}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        order = self.order
        return f"<WeylOp order={order} terms={self.term_count()}>"


def _as_weylop(value):
    if isinstance(value, WeylOp):
        return value
    if isinstance(value, XPoly):
        return WeylOp.from_xpoly(value)
    p = _as_ppoly(value)
    if p is NotImplemented:
        return NotImplemented
    return WeylOp.from_xpoly(XPoly.const(p))


def _normal_ordered_product(A: WeylOp, B: WeylOp) -> WeylOp:
    """Exact normal-ordered product via D^n f = sum(C(n,k) f^(k) D^(n-k))."""
    a, b = A._coeffs, B._coeffs
    if not a or not b:
        return _W_ZERO
    with guarded_operation():
        # derivative chains of B's coefficients, as far as they stay nonzero
        ders = [list(b)]
        max_k = min(len(a) - 1, max(p.degree() for p in b))
        for _ in range(max_k):
            nxt = [p.diff() for p in ders[-1]]
            if all(p.is_zero() for p in nxt):
                break
            ders.append(nxt)
        out = [XPoly.zero()] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai.is_zero():
                continue
            c = 1
            for k in range(min(i, len(ders) - 1) + 1):
                if k:
                    c = c * (i - k + 1) // k
                scaled = ai if c == 1 else ai * rat(c)
                row = ders[k]
                base = i - k
                for j, bj in enumerate(row):
                    if bj.is_zero():
                        continue
                    out[base + j] = out[base + j] + scaled * bj
        while out and out[-1].is_zero():
            out.pop()
        return WeylOp(tuple(out), _raw=True)


def horner_constpoly(constants, X: WeylOp) -> WeylOp:
    """Evaluate sum(c_i X^i) by Horner's scheme, constants acting as scalars.

    ``constants`` is the sequence c_0..c_n of ParamPoly (or rational) scalars.
    Scalars commute with every operator, so accumulation multiplies X on the
    left, which keeps intermediate coefficient growth on the cheap side.
    """
    cs = [_as_ppoly(c) for c in constants]
    if any(c is NotImplemented for c in cs):
        raise UsageError("constants must be rationals or parameter polynomials")
    with guarded_operation():
        acc = _W_ZERO
        for c in reversed(cs):
            acc = X * acc + WeylOp.const(c)
        return acc


class TotalSymbol:
    """Bivariate polynomial in (x, xi) with ParamPoly coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[tuple[int, int], ParamPoly]):
        self._terms = {k: v for k, v in terms.items() if not v.is_zero()}

    @property
    def degree(self):
        """Total degree in (x, xi); the zero symbol reports -inf."""
        if not self._terms:
            return NEG_INF
        return max(x + xi for (x, xi) in self._terms)

    def coefficient(self, xpow: int, xipow: int) -> ParamPoly:
        return self._terms.get((xpow, xipow), ParamPoly.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, TotalSymbol):
            return NotImplemented
        return self._terms == other._terms

    def __add__(self, other: "TotalSymbol") -> "TotalSymbol":
        out = dict(self._terms)
        for k, v in other._terms.items():
            w = out.get(k)
            out[k] = v if w is None else w + v
        return TotalSymbol(out)

    def __repr__(self) -> str:
        return f"<TotalSymbol degree={self.degree} terms={len(self._terms)}>"


_W_ZERO = WeylOp((), _raw=True)
_W_ONE = WeylOp((XPoly.one(),), _raw=True)
_W_X = WeylOp((XPoly.x(),), _raw=True)
_W_D = WeylOp((XPoly.zero(), XPoly.one()), _raw=True)


# ---------------------------------------------------------------------------
# randomized identity testing


@dataclass(frozen=True)
class Verdict:
    """Outcome of an exact or randomized identity check."""

    passed: bool
    mode: str
    trials: int = 0
    seed: int = 0
    failure_bound: object = None
    detail: str = ""

    def describe(self) -> str:
        lines = [f"mode={self.mode}", f"trials={self.trials}", f"seed={self.seed}"]
        if self.failure_bound is not None:
            lines.append(f"failure_bound={float(self.failure_bound):.3e}")
        lines.append(f"verdict={'pass' if self.passed else 'FAIL'}")
        if self.detail:
            lines.append(self.detail)
        return "\n".join(lines)


def random_alpha_points(trials: int, seed: int, nonzero=()):
    """Deterministic stream of integer parameter points in the sampling window.

    ``nonzero`` lists 1-based coordinates that must not be zero (resampled,
    still deterministic).
    """
    rng = random.Random(seed)
    for _ in range(trials):
        pt = []
        for j in range(1, 7):
            v = rng.randint(SAMPLE_LO, SAMPLE_HI)
            while j in nonzero and v == 0:
                v = rng.randint(SAMPLE_LO, SAMPLE_HI)
            pt.append(v)
        yield tuple(pt)


def schwartz_zippel_bound(degree: int, trials: int):
    """Upper bound on the probability that a nonzero identity of the given
    total parameter degree evaluates to zero on all independent trials."""
    if degree <= 0:
        return QQ(0)
    per_trial = min(QQ(degree, SAMPLE_SIZE), QQ(1))
    return per_trial ** trials


def commutes(A: WeylOp, B: WeylOp, mode: str = "symbolic",
             trials: int = 20, seed: int = 0) -> Verdict:
    """Check [A, B] = 0 exactly or at seeded random parameter points."""
    if mode == "symbolic":
        residual = A.commutator(B)
        detail = "" if residual.is_zero() else f"residual order {residual.order}"
        return Verdict(residual.is_zero(), "symbolic", detail=detail)
    if mode != "random":
        raise UsageError(f"unknown verification mode {mode!r}")
    degree = max(A.alpha_degree(), 0) + max(B.alpha_degree(), 0)
    bound = schwartz_zippel_bound(degree, trials)
    for i, pt in enumerate(random_alpha_points(trials, seed)):
        As = A.specialize_params(pt)
        Bs = B.specialize_params(pt)
        if not As.commutator(Bs).is_zero():
            return Verdict(False, "random", trials, seed, bound,
                           f"counterexample at trial {i}: alpha={pt}")
    return Verdict(True, "random", trials, seed, bound,
                   f"degree bound {degree} over {SAMPLE_SIZE} values/coordinate")
