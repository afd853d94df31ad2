"""
Differentials and partial derivatives
=====================================

``df`` can be written with the differentials pushed to the left,

    df = dz . d_l f/dz + dz* . d_l f/dz*,

or to the right. The coefficients are the four partial derivatives. They are
computed here twice: by the rewriting engine and by the closed monomial
formulas.
"""

from qdisc import NormalPolynomial, QContext, d_on_oneform, differential, format_poly, partial
from qdisc.qforms import WHICH

ctx = QContext("2/3")
f = NormalPolynomial.monomial(2, 1)

omega = differential(ctx, f)
print(f"d(z^2 z*) = dz . {format_poly(omega.p)} + dz* . {format_poly(omega.r)}")
pt, rt = omega.to_right(ctx)
print(f"          = {format_poly(pt)} . dz + {format_poly(rt)} . dz*")

for which in WHICH:
    closed = partial(ctx, f, which)
    engine = partial(ctx, f, which, method="engine")
    print(f"{which:8s} {format_poly(closed):16s} engine agrees: {closed == engine}")

# d applied twice vanishes
print("d(d(z^2 z*)) = 0:", not d_on_oneform(ctx, omega))
