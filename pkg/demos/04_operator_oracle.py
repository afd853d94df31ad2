"""
Checking against weighted shifts
================================

The raising operator ``Z e_m = e_{m+1}`` and its adjoint
``Z* e_m = lambda_m e_{m-1}`` are built on a truncated basis with entries that
are power series in t. The covariant symbol of ``f^ g^`` is the star product
computed independently of the explicit formula.
"""

from qdisc import (
    AntiNormalPolynomial,
    NormalPolynomial,
    QContext,
    berezin_transform,
    format_poly,
    oracle_star,
    star_product,
    verify_relation3,
)
from qdisc.suite import calibrate

ctx = QContext("2/3")

rep = verify_relation3(ctx, M=20, N=6)
print(f"deformed commutation relation, M=20, mod t^7: {rep.ok} (exact on {rep.window} columns)")

f = NormalPolynomial.monomial(1, 2)
g = NormalPolynomial.monomial(2, 1)
from_formula = star_product(ctx, f, g, 3)
from_operators = oracle_star(ctx, f, g, 3)
print("z z*^2 * z^2 z*: formula == operators:", from_formula == from_operators)
for k, piece in enumerate(from_operators.t_slices()):
    print(f"  t^{k}: {format_poly(piece)}")

# Berezin transform: anti-normal symbol in, normal symbol out
B = berezin_transform(ctx, AntiNormalPolynomial({(1, 1): 1}), 2)
print("B(z* z):")
for k, piece in enumerate(B.t_slices()):
    print(f"  t^{k}: {format_poly(piece)}")

cal = calibrate(ctx)
print("convention agreement with operators:", {c.value: ok for c, ok in cal.agrees.items()})
