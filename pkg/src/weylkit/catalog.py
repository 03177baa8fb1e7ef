"""Exact constructors for the explicit operator families and curve-constant
formulas the toolkit ships with.

Transcription discipline: each long formula is assembled one displayed line at
a time, with one source line per coefficient block; the golden tests compare
the assembled polynomials against independently entered copies, and the
commutation/curve identities are the final arbiter of every reading.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameterError
from .exactalg import PARAMS, ParamPoly, XPoly, rat
from .weylcore import WeylOp

_A1, _A2, _A3, _A4, _A5, _A6 = PARAMS

#: genera with catalog-backed desk checks
SUPPORTED_GENERA = (1, 2, 3)


def check_genus(g: int) -> int:
    if g not in SUPPORTED_GENERA:
        raise InvalidParameterError(f"genus must be one of {SUPPORTED_GENERA}, got {g}")
    return g


def make_p() -> WeylOp:
    """The order-2 building block (a1*x^2+1)*D^2 + (a2*x+a3)*D + a4*x + a5."""
    d = WeylOp.d()
    lead = XPoly((ParamPoly.one(), ParamPoly.zero(), _A1))   # a1*x^2 + 1
    mid = XPoly((_A3, _A2))                                  # a2*x + a3
    low = XPoly((_A5, _A4))                                  # a4*x + a5
    return lead * d ** 2 + mid * d + WeylOp.from_xpoly(low)


def make_l4b(g: int) -> WeylOp:
    """Order-4 operator: the square of the order-2 block plus the linear
    correction a1*a4*g*(g+1)*x + a6, with all six parameters symbolic."""
    check_genus(g)
    p = make_p()
    corr = XPoly((_A6, _A1 * _A4 * (g * (g + 1))))
    return p ** 2 + WeylOp.from_xpoly(corr)


def _q0() -> XPoly:
    a1, a2, a3, a4, a5 = _A1, _A2, _A3, _A4, _A5
    return XPoly((
        # x^0 line
        rat(3, 2) * a4 * (9 * a3 * a1 ** 2 + (8 * a2 * a3 + 60 * a5 * a3 + 58 * a4) * a1
                          + 30 * a2 * a4) * a1,
        # x^1 line
        rat(3, 2) * a4 * (6 * a1 ** 2 + (13 * a2 - 64 * a5) * a1 - 60 * a3 * a4
                          + 6 * a2 * (a2 + 20 * a5)) * a1 ** 2,
        # x^2 line
        15 * (a1 + 3 * a2) * a4 ** 2 * a1 ** 2,
    ))


def _q1() -> XPoly:
    a1, a2, a3, a4, a5 = _A1, _A2, _A3, _A4, _A5
    return XPoly((
        # x^0 line
        15 * a4 * (5 * a1 ** 2 + 2 * (3 * a3 ** 2 + 4 * a2 - 6 * a5) * a1
                   + 3 * a2 ** 2) * a1,
        # x^1 line
        -30 * a4 * ((2 * a1 - 3 * a2) * a3 + 12 * a4) * a1 ** 2,
        # x^2 line
        15 * a4 * (5 * a1 ** 2 + 4 * (a2 + 3 * a5) * a1 + 3 * a2 ** 2) * a1 ** 2,
    ))


def _q2() -> XPoly:
    a1, a2, a3, a4, a5 = _A1, _A2, _A3, _A4, _A5
    return XPoly((
        # x^0 line
        rat(1, 4) * (a2 ** 4 + 6 * a1 ** 3 * (a2 + 2 * a5)
                     + a1 * (-4 * a2 ** 3 - 8 * a5 * a2 ** 2 + 54 * a3 * a4 * a2
                             + 252 * a4 ** 2)
                     + a1 ** 2 * (a2 ** 2 + 16 * a5 * a2 + 16 * a5 ** 2
                                  - 228 * a3 * a4)),
        # x^1 line
        rat(15, 2) * a1 * (18 * a1 ** 2 - 2 * (9 * a2 + 14 * a5) * a1 + a2 ** 2) * a4,
        # x^2 line
        -135 * a1 ** 2 * a4 ** 2,
    ))


def make_l10b() -> WeylOp:
    """Order-10 partner of make_l4b(2): assembled as a polynomial expression
    in the order-2 block P and D, every product read left to right."""
    a1, a2, a3, a4, a5 = _A1, _A2, _A3, _A4, _A5
    p = make_p()
    d = WeylOp.d()

    # coefficient of P^3
    c_p3 = XPoly((
        rat(5, 2) * a1 * (a2 + 2 * a5) + 3 * a1 ** 2 - rat(5, 4) * a2 ** 2,
        rat(5, 2) * a1 * (6 * a4),
    ))
    # coefficient of P^2
    c_p2 = XPoly((
        rat(15, 2) * a1 * a4 * (3 * a3),
        rat(15, 2) * a1 * a4 * (34 * a1 + 3 * a2),
    ))
    # coefficient of P^2 D
    c_p2d = XPoly((45 * a1 * a4, ParamPoly.zero(), 45 * a1 * a4 * a1))
    # coefficient of P D
    c_pd = XPoly((
        -30 * a1 * a4 * (-10 * a1 - 3 * a2),
        -30 * a1 * a4 * (6 * a1 * a3),
        -30 * a1 * a4 * (2 * a1 ** 2 + 3 * a1 * a2),
    ))

    return (p ** 5
            + c_p3 * p ** 3
            + c_p2 * p ** 2
            + c_p2d * (p ** 2 * d)
            + c_pd * (p * d)
            + _q2() * p
            + _q1() * d
            + WeylOp.from_xpoly(_q0()))


@dataclass(frozen=True)
class CurveCoeffs:
    """Constants of the genus-2 hyperelliptic relation w^2 = z^5 + c4*z^4 + ...

    ``b`` holds the constants of the same relation with the additive parameter
    a6 removed from the order-4 operator; ``c`` is the exact a6-shift of ``b``.
    Tuples are indexed 0..4 (b[k] multiplies z^k).
    """

    b: tuple[ParamPoly, ...]
    c: tuple[ParamPoly, ...]

    def specialize_c(self, point):
        return tuple(p.specialize(point) for p in self.c)


def _b4() -> ParamPoly:
    a1, a2, a5 = _A1, _A2, _A5
    return 6 * a1 ** 2 + 5 * (a2 + 2 * a5) * a1 - rat(5, 2) * a2 ** 2


def _b3() -> ParamPoly:
    a1, a2, a3, a4, a5 = _A1, _A2, _A3, _A4, _A5
    return rat(3, 16) * (
        48 * a1 ** 4
        + 96 * (a2 + 2 * a5) * a1 ** 3
        + 4 * (-a2 ** 2 + 44 * a5 * a2 + 44 * a5 ** 2 + 28 * a3 * a4) * a1 ** 2
        - 4 * (11 * a2 ** 3 + 22 * a5 * a2 ** 2 + 14 * a3 * a4 * a2 - 28 * a4 ** 2) * a1
        + 11 * a2 ** 4
    )


def _b2() -> ParamPoly:
    a1, a2, a3, a4, a5 = _A1, _A2, _A3, _A4, _A5
    return rat(1, 8) * (
        -5 * a2 ** 6
        + 3 * a1 * (10 * a2 ** 3 + 20 * a5 * a2 ** 2 + 39 * a3 * a4 * a2
                    - 78 * a4 ** 2) * a2 ** 2
        + 72 * a1 ** 5 * (a2 + 2 * a5)
        + 72 * a1 ** 4 * (a2 ** 2 + 6 * a5 * a2 + 6 * a5 ** 2 + 8 * a3 * a4)
        + 4 * a1 ** 3 * (-17 * a2 ** 3 + 120 * a5 ** 2 * a2 + 45 * a3 * a4 * a2
                         + 80 * a5 ** 3 + 234 * a4 ** 2
                         + 6 * (a2 ** 2 + 39 * a3 * a4) * a5)
        - 3 * a1 ** 2 * (11 * a2 ** 4 + 80 * a5 * a2 ** 3
                         + 4 * (20 * a5 ** 2 + 39 * a3 * a4) * a2 ** 2
                         + 12 * a4 * (13 * a3 * a5 - 10 * a4) * a2
                         + 6 * a4 ** 2 * (3 * a3 ** 2 - 64 * a5))
    )


def _b1() -> ParamPoly:
    a1, a2, a3, a4, a5 = _A1, _A2, _A3, _A4, _A5
    return rat(1, 16) * (
        a2 ** 8
        - 8 * a1 * (a2 ** 3 + 2 * a5 * a2 ** 2 + 9 * a3 * a4 * a2
                    - 18 * a4 ** 2) * a2 ** 4
        + 12 * a1 ** 5 * (a2 ** 3 + 48 * a5 ** 2 * a2 + 78 * a3 * a4 * a2
                          + 32 * a5 ** 3 + 180 * a4 ** 2
                          + 6 * (3 * a2 ** 2 + 32 * a3 * a4) * a5)
        + 36 * a1 ** 6 * ((a2 + 2 * a5) ** 2 + 12 * a3 * a4)
        + 6 * a1 ** 2 * (3 * a2 ** 6 + 16 * a5 * a2 ** 5
                         + 8 * (2 * a5 ** 2 + 9 * a3 * a4) * a2 ** 4
                         + 12 * a4 * (8 * a3 * a5 - 5 * a4) * a2 ** 3
                         + 6 * a4 ** 2 * (15 * a3 ** 2 - 44 * a5) * a2 ** 2
                         - 288 * a3 * a4 ** 3 * a2
                         + 288 * a4 ** 4)
        + 4 * a1 ** 3 * (a2 ** 5 - 30 * a5 * a2 ** 4
                         - 48 * (2 * a5 ** 2 + 3 * a3 * a4) * a2 ** 3
                         - 2 * (32 * a5 ** 3 + 288 * a3 * a4 * a5
                                + 153 * a4 ** 2) * a2 ** 2
                         - 18 * a4 * (27 * a4 * a3 ** 2 + 16 * a5 ** 2 * a3
                                      - 32 * a4 * a5) * a2
                         + 36 * a4 ** 2 * (-3 * a5 * a3 ** 2 + 24 * a4 * a3
                                           + 28 * a5 ** 2))
        + a1 ** 4 * (-47 * a2 ** 4 - 160 * a5 * a2 ** 3
                     + 96 * (a5 ** 2 - 6 * a3 * a4) * a2 ** 2
                     + 128 * (4 * a5 ** 3 + 9 * a3 * a4 * a5 + 18 * a4 ** 2) * a2
                     + 8 * (32 * a5 ** 4 + 288 * a3 * a4 * a5 ** 2
                            + 792 * a4 ** 2 * a5 + 189 * a3 ** 2 * a4 ** 2))
    )


def _b0() -> ParamPoly:
    a1, a2, a3, a4, a5 = _A1, _A2, _A3, _A4, _A5
    return rat(3, 8) * a1 * a4 * (
        36 * (a3 * (a2 + 2 * a5) - 6 * a4) * a1 ** 6
        + 6 * (2 * a3 * a2 ** 2 + 2 * (6 * a4 + 13 * a3 * a5) * a2
               + 32 * a3 * a5 ** 2 + 45 * a3 ** 2 * a4 - 48 * a4 * a5) * a1 ** 5
        + (-47 * a3 * a2 ** 3 + 186 * a4 * a2 ** 2 - 36 * a3 ** 2 * a4 * a2
           + 128 * a3 * a5 ** 3 + 1728 * a3 * a4 ** 2
           + 96 * (a2 * a3 + a4) * a5 ** 2
           + 24 * ((15 * a3 ** 2 + 16 * a2) * a4 - 4 * a2 ** 2 * a3) * a5) * a1 ** 4
        + 4 * (a3 * a2 ** 4 - (29 * a4 + 24 * a3 * a5) * a2 ** 3
               - 3 * (15 * a4 * a3 ** 2 + 16 * a5 ** 2 * a3 + 2 * a4 * a5) * a2 ** 2
               - 4 * (18 * a4 * a5 * a3 ** 2 + (4 * a5 ** 3 + 63 * a4 ** 2) * a3
                      - 12 * a4 * a5 ** 2) * a2
               + 2 * a4 * (16 * a5 ** 3 + 180 * a3 * a4 * a5
                           - 27 * (a3 ** 3 - 8 * a4) * a4)) * a1 ** 3
        + 6 * (3 * a3 * a2 ** 5 + 12 * a3 * a5 * a2 ** 4
               + 2 * (9 * a4 * a3 ** 2 + 4 * a5 ** 2 * a3 - 8 * a4 * a5) * a2 ** 3
               - 4 * a4 * (-3 * a5 * a3 ** 2 + 3 * a4 * a3 + 4 * a5 ** 2) * a2 ** 2
               - 6 * a4 ** 2 * (-3 * a3 ** 3 + 20 * a5 * a3 + 8 * a4) * a2
               + 12 * a4 ** 3 * (16 * a5 - 3 * a3 ** 2)) * a1 ** 2
        - 2 * a2 ** 2 * (4 * a3 * a2 ** 4 - 6 * (a4 - a3 * a5) * a2 ** 3
                         + 3 * a4 * (3 * a3 ** 2 - 4 * a5) * a2 ** 2
                         - 36 * a3 * a4 ** 2 * a2 + 36 * a4 ** 3) * a1
        + a2 ** 6 * (a2 * a3 - 2 * a4)
    )


def curve_coeffs() -> CurveCoeffs:
    """Exact curve constants for the pair (make_l4b(2), make_l10b())."""
    a6 = _A6
    b4, b3, b2, b1, b0 = _b4(), _b3(), _b2(), _b1(), _b0()
    c4 = b4 - 5 * a6
    c3 = b3 - 4 * b4 * a6 + 10 * a6 ** 2
    c2 = b2 - 3 * b3 * a6 + 6 * b4 * a6 ** 2 - 10 * a6 ** 3
    c1 = b1 - 2 * b2 * a6 + 3 * b3 * a6 ** 2 - 4 * b4 * a6 ** 3 + 5 * a6 ** 4
    c0 = b0 - a6 * (b1 + a6 * (a6 * (b3 - b4 * a6 + a6 ** 2) - b2))
    return CurveCoeffs(b=(b0, b1, b2, b3, b4), c=(c0, c1, c2, c3, c4))


def chebyshev_t(r: int) -> XPoly:
    """Chebyshev polynomial of degree |r| via the three-term recurrence."""
    r = abs(int(r))
    prev = XPoly.one()
    if r == 0:
        return prev
    cur = XPoly.x()
    for _ in range(r - 1):
        prev, cur = cur, 2 * XPoly.x() * cur - prev
    return cur


def make_l4sharp(g: int, r: int, a, b=0) -> WeylOp:
    """Order-4 operator with Chebyshev-weighted coefficients in the variable y
    (treated as the x variable): ((1-y^2)D^2 - 3yD + a*T_r(y) + b)^2 minus the
    correction a*r^2*g*(g+1)*T_r(y).  Requires a != 0."""
    check_genus(g)
    a = rat(a)
    b = rat(b)
    if not a:
        raise InvalidParameterError("the Chebyshev weight a must be nonzero")
    d = WeylOp.d()
    t = chebyshev_t(r)
    lead = XPoly((ParamPoly.one(), ParamPoly.zero(), ParamPoly.const(-1)))  # 1 - y^2
    mid = XPoly((ParamPoly.zero(), ParamPoly.const(-3)))                    # -3y
    block = lead * d ** 2 + mid * d + WeylOp.from_xpoly(t * a + XPoly.const(b))
    corr = t * (a * r * r * g * (g + 1))
    return block ** 2 - WeylOp.from_xpoly(corr)


def make_mironov_l4(g: int, coeffs) -> WeylOp:
    """Order-4 operator (D^2 + u(x))^2 + g*(g+1)*u3*x for the cubic
    u(x) = u3*x^3 + u2*x^2 + u1*x + u0 with rational coefficients u0..u3.

    These coefficients are plain rationals, a namespace separate from the
    symbolic parameters a1..a6 of make_l4b."""
    check_genus(g)
    u0, u1, u2, u3 = (rat(c) for c in coeffs)
    u = XPoly([u0, u1, u2, u3])
    block = WeylOp.d() ** 2 + WeylOp.from_xpoly(u)
    corr = XPoly.monomial(u3 * g * (g + 1), 1)
    return block ** 2 + WeylOp.from_xpoly(corr)


#: CLI-facing catalog names with short descriptions
CATALOG_NAMES = {
    "p": "order-2 building block with symbolic parameters a1..a5",
    "l4b": "order-4 symbolic operator (square of p plus linear correction); takes --genus",
    "l10b": "order-10 commuting partner of l4b at genus 2",
    "mironov-l4": "order-4 operator with monic D^2 block and cubic potential; --params u0,u1,u2,u3",
    "l4sharp": "order-4 Chebyshev-coefficient operator; --params r,a,b",
    "chebyshev": "Chebyshev polynomial; --params r",
}


def build_catalog_operator(name: str, genus: int = 2, params: tuple = ()) -> WeylOp:
    """Construct a catalog operator by CLI name."""
    if name == "p":
        return make_p()
    if name == "l4b":
        return make_l4b(genus)
    if name == "l10b":
        return make_l10b()
    if name == "mironov-l4":
        if len(params) != 4:
            raise InvalidParameterError("mironov-l4 needs --params u0,u1,u2,u3")
        return make_mironov_l4(genus, params)
    if name == "l4sharp":
        if len(params) not in (2, 3):
            raise InvalidParameterError("l4sharp needs --params r,a[,b]")
        r = int(params[0])
        a = params[1]
        b = params[2] if len(params) == 3 else 0
        return make_l4sharp(genus, r, a, b)
    raise InvalidParameterError(f"unknown catalog operator {name!r}")
