"""Exact arbitrary-precision rational arithmetic and the two polynomial rings
everything else is built on: polynomials in the six parameters a1..a6, and
polynomials in x whose coefficients are parameter polynomials.

All values are immutable after construction and all operations are pure, so
values can be shared freely between threads.

Representation notes
--------------------
A parameter monomial a1^e1 * ... * a6^e6 is stored as a single packed integer
key with the total degree in the most significant field followed by e1..e6 in
descending significance.  Integer comparison of packed keys therefore equals
the graded-lexicographic monomial order, and multiplying two monomials is a
single integer addition.  Field width is 16 bits; multiplications guard
against field overflow through the total-degree field.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from fractions import Fraction

from .errors import ResourceGuardExceeded, UsageError

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    QQ = Fraction

#: scalar types accepted wherever a rational is expected
_SCALARS = (int, Fraction, type(QQ(0)))

NVARS = 6

_FIELD_BITS = 16
_FIELD_MASK = (1 << _FIELD_BITS) - 1
_DEG_SHIFT = _FIELD_BITS * NVARS
_MAX_DEGREE = _FIELD_MASK


def rat(num, den=1):
    """Exact rational from ints, strings like ``"3/4"``, or rational types."""
    if den == 1:
        return QQ(num)
    return QQ(num) / QQ(den)


def rat_bits(q) -> int:
    """Bit size of a rational, used for pivot selection in elimination."""
    return int(q.numerator).bit_length() + int(q.denominator).bit_length()


# ---------------------------------------------------------------------------
# monomial key packing


def pack_exponents(exps) -> int:
    key = sum(exps)
    if key > _MAX_DEGREE:
        raise UsageError(f"monomial degree {key} exceeds representable range")
    for e in exps:
        if e < 0:
            raise UsageError("negative exponent in parameter monomial")
        key = (key << _FIELD_BITS) | e
    return key


def unpack_exponents(key: int) -> tuple[int, ...]:
    exps = []
    for _ in range(NVARS):
        exps.append(key & _FIELD_MASK)
        key >>= _FIELD_BITS
    return tuple(reversed(exps))


# ---------------------------------------------------------------------------
# term-count guard
#
# One top-level symbolic operation (an operator product, power, commutator,
# substitution, ...) may produce at most ``cap`` elementary monomial products;
# runaway expansions abort with ResourceGuardExceeded instead of exhausting
# memory.  The count resets when the outermost guarded operation begins.

DEFAULT_TERM_CAP = 10_000_000


class _GuardState(threading.local):
    def __init__(self):
        self.cap = DEFAULT_TERM_CAP
        self.count = 0
        self.depth = 0


_guard = _GuardState()


def set_term_cap(cap: int) -> None:
    if cap < 1:
        raise UsageError("term cap must be positive")
    _guard.cap = cap


def get_term_cap() -> int:
    return _guard.cap


def charge(n: int) -> None:
    """Account for n elementary products against the current operation budget."""
    if _guard.depth == 0:
        # a bare ring operation counts as its own top-level operation
        _guard.count = n
    else:
        _guard.count += n
    if _guard.count > _guard.cap:
        raise ResourceGuardExceeded(
            f"term budget exceeded: {_guard.count} > cap {_guard.cap}"
        )


@contextmanager
def guarded_operation():
    """Delimit one top-level symbolic operation for budget accounting."""
    if _guard.depth == 0:
        _guard.count = 0
    _guard.depth += 1
    try:
        yield
    finally:
        _guard.depth -= 1


# ---------------------------------------------------------------------------
# polynomials in the parameters a1..a6


class ParamPoly:
    """Exact multivariate polynomial in the parameters a1..a6 over rationals.

    Canonical form stores no zero coefficients; iteration and printing follow
    graded-lexicographic descending monomial order.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[int, object] | None = None, *, _raw: bool = False):
        if terms is None:
            self._terms = {}
        elif _raw:
            self._terms = terms
        else:
            self._terms = {k: v for k, v in terms.items() if v}

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "ParamPoly":
        return _PP_ZERO

    @staticmethod
    def one() -> "ParamPoly":
        return _PP_ONE

    @staticmethod
    def const(value) -> "ParamPoly":
        q = rat(value)
        if not q:
            return _PP_ZERO
        return ParamPoly({0: q}, _raw=True)

    @staticmethod
    def var(j: int) -> "ParamPoly":
        """The parameter a_j, 1-based index in 1..6."""
        if not 1 <= j <= NVARS:
            raise UsageError(f"parameter index {j} out of range 1..{NVARS}")
        exps = [0] * NVARS
        exps[j - 1] = 1
        return ParamPoly({pack_exponents(exps): QQ(1)}, _raw=True)

    @staticmethod
    def from_terms(items) -> "ParamPoly":
        """Build from (exponent-tuple, coefficient) pairs, merging duplicates."""
        d: dict[int, object] = {}
        for exps, coeff in items:
            key = pack_exponents(exps)
            q = d.get(key, QQ(0)) + rat(coeff)
            if q:
                d[key] = q
            else:
                d.pop(key, None)
        return ParamPoly(d, _raw=True)

    # -- predicates and accessors -------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def is_const(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def const_value(self):
        """The value of a constant polynomial as an exact rational."""
        if not self._terms:
            return QQ(0)
        if len(self._terms) == 1 and 0 in self._terms:
            return self._terms[0]
        raise UsageError("polynomial is not constant")

    def total_degree(self) -> int:
        """Total degree; zero polynomial reports -1."""
        if not self._terms:
            return -1
        return max(self._terms) >> _DEG_SHIFT

    def term_count(self) -> int:
        return len(self._terms)

    def terms(self):
        """Yield (exponent-tuple, coefficient) in canonical descending order."""
        for key in sorted(self._terms, reverse=True):
            yield unpack_exponents(key), self._terms[key]

    def coefficient(self, exps) -> object:
        return self._terms.get(pack_exponents(exps), QQ(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- ring operations -----------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, ParamPoly):
            return self._terms == other._terms
        if isinstance(other, _SCALARS):
            return self._terms == ParamPoly.const(other)._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other) -> "ParamPoly":
        other = _as_ppoly(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._terms:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for k, v in other._terms.items():
            w = out.get(k)
            if w is None:
                out[k] = v
            else:
                w = w + v
                if w:
                    out[k] = w
                else:
                    del out[k]
        return ParamPoly(out, _raw=True)

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        return ParamPoly({k: -v for k, v in self._terms.items()}, _raw=True)

    def __sub__(self, other) -> "ParamPoly":
        other = _as_ppoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ParamPoly":
        return (-self) + other

    def __mul__(self, other) -> "ParamPoly":
        other = _as_ppoly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return _PP_ZERO
        if len(a) > len(b):
            a, b = b, a
        if (max(a) >> _DEG_SHIFT) + (max(b) >> _DEG_SHIFT) > _MAX_DEGREE:
            raise UsageError("product degree exceeds representable range")
        charge(len(a) * len(b))
        out: dict[int, object] = {}
        get = out.get
        for ka, va in a.items():
            for kb, vb in b.items():
                k = ka + kb
                v = va * vb
                w = get(k)
                if w is None:
                    out[k] = v
                else:
                    w = w + v
                    if w:
                        out[k] = w
                    else:
                        del out[k]
        return ParamPoly(out, _raw=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ParamPoly":
        if not isinstance(n, int) or n < 0:
            raise UsageError("polynomial exponent must be a nonnegative integer")
        result = _PP_ONE
        for _ in range(n):
            result = result * self
        return result

    # -- calculus and evaluation ---------------------------------------------

    def partial(self, j: int) -> "ParamPoly":
        """Formal partial derivative with respect to a_j (j in 1..6)."""
        if not 1 <= j <= NVARS:
            raise UsageError(f"parameter index {j} out of range 1..{NVARS}")
        shift = _FIELD_BITS * (NVARS - j)
        dec = (1 << _DEG_SHIFT) | (1 << shift)
        out: dict[int, object] = {}
        for k, v in self._terms.items():
            e = (k >> shift) & _FIELD_MASK
            if e:
                out[k - dec] = v * e
        return ParamPoly(out, _raw=True)

    def specialize(self, point):
        """Exact evaluation at a 6-tuple of rationals; a ring homomorphism."""
        vals = [rat(p) for p in point]
        if len(vals) != NVARS:
            raise UsageError(f"specialization point must have {NVARS} coordinates")
        total = QQ(0)
        for key, coeff in self._terms.items():
            v = coeff
            for j in range(NVARS - 1, -1, -1):
                e = key & _FIELD_MASK
                if e:
                    v = v * vals[j] ** e
                key >>= _FIELD_BITS
            total += v
        return total

    def divexact(self, divisor: "ParamPoly") -> "ParamPoly | None":
        """Exact quotient self / divisor, or None when division is not exact."""
        if divisor.is_zero():
            raise UsageError("division by the zero polynomial")
        if self.is_zero():
            return _PP_ZERO
        if divisor.is_const():
            c = divisor.const_value()
            return ParamPoly({k: v / c for k, v in self._terms.items()}, _raw=True)
        rem = dict(self._terms)
        dkey = max(divisor._terms)
        dval = divisor._terms[dkey]
        dexps = unpack_exponents(dkey)
        quot: dict[int, object] = {}
        while rem:
            rkey = max(rem)
            rexps = unpack_exponents(rkey)
            if any(r < d for r, d in zip(rexps, dexps)):
                return None
            qkey = rkey - dkey
            qval = rem[rkey] / dval
            quot[qkey] = qval
            charge(len(divisor._terms))
            for k, v in divisor._terms.items():
                kk = k + qkey
                w = rem.get(kk)
                if w is None:
                    rem[kk] = -v * qval
                else:
                    w = w - v * qval
                    if w:
                        rem[kk] = w
                    else:
                        del rem[kk]
        return ParamPoly(quot, _raw=True)

    # -- formatting -----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for exps, coeff in self.terms():
            factors = [f"a{j + 1}" + (f"^{e}" if e > 1 else "")
                       for j, e in enumerate(exps) if e]
            mag = coeff if coeff > 0 else -coeff
            if not factors or mag != 1:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if coeff > 0 else f" - {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"ParamPoly({self})"


def _as_ppoly(value):
    if isinstance(value, ParamPoly):
        return value
    if isinstance(value, _SCALARS):
        return ParamPoly.const(value)
    return NotImplemented


_PP_ZERO = ParamPoly({}, _raw=True)
_PP_ONE = ParamPoly({0: QQ(1)}, _raw=True)

#: the six parameter generators a1..a6
PARAMS = tuple(ParamPoly.var(j) for j in range(1, NVARS + 1))


# ---------------------------------------------------------------------------
# polynomials in x over ParamPoly


class XPoly:
    """Polynomial in x with ParamPoly coefficients, dense by x-degree."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=(), *, _raw: bool = False):
        if _raw:
            self._coeffs = coeffs
            return
        cs = [_as_ppoly_strict(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self._coeffs = tuple(cs)

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero() -> "XPoly":
        return _XP_ZERO

    @staticmethod
    def one() -> "XPoly":
        return _XP_ONE

    @staticmethod
    def x() -> "XPoly":
        return _XP_X

    @staticmethod
    def const(value) -> "XPoly":
        p = _as_ppoly_strict(value)
        if p.is_zero():
            return _XP_ZERO
        return XPoly((p,), _raw=True)

    @staticmethod
    def monomial(coeff, k: int) -> "XPoly":
        """coeff * x^k"""
        p = _as_ppoly_strict(coeff)
        if p.is_zero():
            return _XP_ZERO
        return XPoly((_PP_ZERO,) * k + (p,), _raw=True)

    # -- accessors -------------------------------------------------------------

    @property
    def coeffs(self) -> tuple[ParamPoly, ...]:
        return self._coeffs

    def degree(self) -> int:
        """x-degree; zero polynomial reports -1."""
        return len(self._coeffs) - 1

    def coeff(self, k: int) -> ParamPoly:
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return _PP_ZERO

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_const(self) -> bool:
        return len(self._coeffs) <= 1 and (not self._coeffs or self._coeffs[0].is_const())

    def const_value(self):
        if not self._coeffs:
            return QQ(0)
        if len(self._coeffs) == 1:
            return self._coeffs[0].const_value()
        raise UsageError("polynomial is not constant in x")

    def alpha_degree(self) -> int:
        """Max total degree in the parameters across all coefficients."""
        return max((c.total_degree() for c in self._coeffs), default=-1)

    def term_count(self) -> int:
        return sum(c.term_count() for c in self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    # -- ring operations --------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = _as_xpoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __add__(self, other) -> "XPoly":
        other = _as_xpoly(other)
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
        return XPoly(tuple(out), _raw=True)

    __radd__ = __add__

    def __neg__(self) -> "XPoly":
        return XPoly(tuple(-c for c in self._coeffs), _raw=True)

    def __sub__(self, other) -> "XPoly":
        other = _as_xpoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "XPoly":
        return (-self) + other

    def __mul__(self, other) -> "XPoly":
        other = _as_xpoly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return _XP_ZERO
        out = [_PP_ZERO] * (len(a) + len(b) - 1)
        for i, p in enumerate(a):
            if p.is_zero():
                continue
            for j, q in enumerate(b):
                if q.is_zero():
                    continue
                out[i + j] = out[i + j] + p * q
        while out and out[-1].is_zero():
            out.pop()
        return XPoly(tuple(out), _raw=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "XPoly":
        if not isinstance(n, int) or n < 0:
            raise UsageError("polynomial exponent must be a nonnegative integer")
        result = _XP_ONE
        for _ in range(n):
            result = result * self
        return result

    # -- calculus and evaluation --------------------------------------------------

    def diff(self) -> "XPoly":
        """Formal d/dx."""
        if len(self._coeffs) <= 1:
            return _XP_ZERO
        # leading coefficient times k >= 1 stays nonzero, no re-trim needed
        out = tuple(self._coeffs[k] * k for k in range(1, len(self._coeffs)))
        return XPoly(out, _raw=True)

    def specialize_params(self, point) -> "XPoly":
        """Evaluate every parameter coefficient at a rational 6-tuple."""
        out = [ParamPoly.const(c.specialize(point)) for c in self._coeffs]
        while out and out[-1].is_zero():
            out.pop()
        return XPoly(tuple(out), _raw=True)

    # -- formatting -----------------------------------------------------------------

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for k in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[k]
            if c.is_zero():
                continue
            xs = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if c.is_const() and not xs:
                body = str(c)
            elif c.is_const():
                v = c.const_value()
                sign = "-" if v < 0 else ""
                mag = -v if v < 0 else v
                body = f"{sign}{xs}" if mag == 1 else f"{sign}{mag}*{xs}"
            elif c.term_count() == 1:
                cs = str(c)
                body = f"{cs}*{xs}" if xs else cs
            else:
                body = f"({c})*{xs}" if xs else f"({c})"
            parts.append(body)
        text = parts[0]
        for p in parts[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return text

    def __repr__(self) -> str:
        return f"XPoly({self})"


def _as_ppoly_strict(value) -> ParamPoly:
    p = _as_ppoly(value)
    if p is NotImplemented:
        raise UsageError(f"cannot interpret {value!r} as a parameter polynomial")
    return p


def _as_xpoly(value):
    if isinstance(value, XPoly):
        return value
    p = _as_ppoly(value)
    if p is NotImplemented:
        return NotImplemented
    return XPoly.const(p)


_XP_ZERO = XPoly((), _raw=True)
_XP_ONE = XPoly((_PP_ONE,), _raw=True)
_XP_X = XPoly((_PP_ZERO, _PP_ONE), _raw=True)
