"""
The star product
================

``f * g = f g + t C_1(f, g) + t^2 C_2(f, g) + ...`` computed from the explicit
formula and truncated at a chosen t-order.
"""

import random

from qdisc import NormalPolynomial, QContext, c_term, format_poly, star_product, verify_associativity
from qdisc.qpoly import random_polynomial

ctx = QContext("1/2")
N = 3
zs, z = NormalPolynomial.monomial(0, 1), NormalPolynomial.monomial(1, 0)


def show(F):
    for k, piece in enumerate(F.t_slices()):
        print(f"  t^{k}: {format_poly(piece)}")


print("z* * z:")
show(star_product(ctx, zs, z, N))

print("z * z*  (no corrections):")
show(star_product(ctx, z, zs, N))

# Formal associativity on a few random triples
rng = random.Random(1)
triples = [[random_polynomial(rng) for _ in range(3)] for _ in range(4)]
print("associative mod t^4:", all(verify_associativity(ctx, *t, N) for t in triples))

# Which C_j(z*^b, z^c) vanish? Each C_j carries at most j derivatives on
# either side; this table only records what is observed.
print("\nnonzero C_j(z*^b, z^c)  (rows b, columns c = 0..3)")
for j in (1, 2, 3):
    print(f"C_{j}")
    for b in range(4):
        row = []
        for c in range(4):
            C = c_term(ctx, NormalPolynomial.monomial(0, b), NormalPolynomial.monomial(c, 0), j)
            row.append("x" if C else ".")
        print("   ", " ".join(row))
