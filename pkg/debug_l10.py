"""Throwaway: solve for the true structured coefficients of the order-10
partner at a rational point and compare with the transcribed display."""
import sys
sys.path.insert(0, "src")

from weylkit.exactalg import QQ, rat
from weylkit.weylcore import WeylOp
from weylkit.catalog import make_l4b, make_p, _q0, _q1, _q2, make_l10b
from weylkit.linalg import solve_affine

point = (2, 3, 5, 7, 11, 13)

L4 = make_l4b(2).specialize_params(point)
P = make_p().specialize_params(point)
D = WeylOp.d()
X = WeylOp.x()

# structured slots: (label, k = P-power, e = D-power, j = x-power)
slots = []
for k, e, jmax, label in [
    (4, 0, 1, "P4"),
    (3, 1, 1, "P3D"),
    (3, 0, 2, "F3"),
    (2, 1, 2, "H2"),
    (2, 0, 3, "F2"),
    (1, 1, 3, "H1"),
    (1, 0, 3, "Q2"),
    (0, 1, 3, "Q1"),
    (0, 0, 3, "Q0"),
]:
    for j in range(jmax + 1):
        slots.append((label, k, e, j))

basis_ops = []
for label, k, e, j in slots:
    op = X ** j * P ** k * D ** e
    basis_ops.append(op)

P5 = P ** 5
r0 = L4.commutator(P5)
brackets = [L4.commutator(op) for op in basis_ops]

# collect row positions
positions = set()
for op in [r0] + brackets:
    for dpow, xpow, exps, coeff in op.terms_canonical():
        positions.add((dpow, xpow))
positions = sorted(positions, reverse=True)

rows = []
rhs = []
for (dpow, xpow) in positions:
    row = [b.param_coefficient(dpow, xpow).const_value() for b in brackets]
    rows.append(row)
    rhs.append(-r0.param_coefficient(dpow, xpow).const_value())

part, null = solve_affine(rows, rhs)
print("solvable:", part is not None, " nullspace dim:", len(null))
if part is None:
    sys.exit(1)

# which slots are ambiguous (nonzero in some nullspace vector)?
ambiguous = set()
for vec in null:
    for i, v in enumerate(vec):
        if v:
            ambiguous.add(i)

# displayed formula values at the point
a1, a2, a3, a4, a5, a6 = (QQ(v) for v in point)

def xpoly_vals(xp, jmax):
    return [xp.coeff(j).specialize(point) for j in range(jmax + 1)]

disp = {}
disp["P4"] = [QQ(0), QQ(0)]
disp["P3D"] = [QQ(0), QQ(0)]
disp["F3"] = [rat(5,2)*a1*(a2+2*a5) + 3*a1**2 - rat(5,4)*a2**2, rat(5,2)*a1*6*a4, QQ(0)]
disp["H2"] = [rat(15,2)*a1*a4*3*a3, rat(15,2)*a1*a4*(34*a1+3*a2), QQ(0)]
disp["F2"] = [45*a1*a4, QQ(0), 45*a1*a4*a1, QQ(0)]
disp["H1"] = [-30*a1*a4*(-10*a1-3*a2), -30*a1*a4*6*a1*a3, -30*a1*a4*(2*a1**2+3*a1*a2), QQ(0)]
disp["Q2"] = xpoly_vals(_q2(), 3)
disp["Q1"] = xpoly_vals(_q1(), 3)
disp["Q0"] = xpoly_vals(_q0(), 3)

print(f"{'slot':8} {'solved':>28} {'displayed':>28}  match")
for i, (label, k, e, j) in enumerate(slots):
    want = disp[label][j]
    got = part[i]
    amb = " (ambiguous)" if i in ambiguous else ""
    mark = "OK " if got == want else ">>>"
    if got != want or amb:
        print(f"{label}[x^{j}]  {str(got):>28} {str(want):>28}  {mark}{amb}")
print("done")
