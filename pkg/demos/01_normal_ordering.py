"""
Normal ordering in Pol(C)_q
===========================

The algebra has one generator ``z`` and the relation

    z* z = q^2 z z* + (1 - q^2).

Every word in ``z`` and ``z*`` has a unique normal form ``sum a_ij z^i z*^j``.
Here ``q = 1/2`` so all coefficients come out as exact fractions.
"""

import random

from qdisc import QContext, Z, ZSTAR, format_poly, involution, multiply, normal_order_word, parse_normal

ctx = QContext("1/2")

# The defining relation, and one step further.
print("z* z     ->", format_poly(normal_order_word(ctx, [ZSTAR, Z])))
print("z* z z   ->", format_poly(normal_order_word(ctx, [ZSTAR, Z, Z])))

# Expressions are parsed with the letter order kept as written.
f = parse_normal(ctx, "(z + z*)^2")
print("(z + z*)^2 ->", format_poly(f))

# The rewriting engine gives the same answer whichever redex it picks first.
rng = random.Random(0)
word = [rng.choice([Z, ZSTAR]) for _ in range(8)]
forms = {format_poly(normal_order_word(ctx, word, random.Random(s))) for s in range(20)}
print(" ".join(word), "->", forms.pop(), "(20 random rewrite orders, one answer)")

# Involution reverses products.
g = parse_normal(ctx, "z^2 z* + 3 z*")
lhs = involution(multiply(ctx, f, g))
rhs = multiply(ctx, involution(g), involution(f))
print("(fg)* == g* f*:", lhs == rhs)
