"""Explicit star product on the quantum disc.

``f * g = (1 - t) sum_j t^j m(p_j(B) f (x) g)`` where ``B`` acts on
``Pol (x) Pol`` by

    B = q^-2 (1 - (1 + q^-2) z* (x) z + q^-2 z*^2 (x) z^2) . (d^r/dz* (x) d^l/dz)

and ``p_j`` is a terminating q-hypergeometric polynomial in ``B``. The
coefficient element of ``B`` multiplies the second tensor factor on the left;
on which side it multiplies the first factor is a :class:`Convention`.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction

from .qforms import partial
from .qpoly import NormalPolynomial, monomial_product
from .scalars import QContext, q_pochhammer


class Convention(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"


# Fixed by comparing both conventions with the operator representation; see
# suite.calibrate. The other reading fails on (z z*) * (z* z).
DEFAULT_CONVENTION = Convention.RIGHT


class TensorPoly:
    """Sparse ``sum c (z^i1 z*^j1) (x) (z^i2 z*^j2)`` keyed by ``((i1, j1), (i2, j2))``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def tensor(cls, f: NormalPolynomial, g: NormalPolynomial) -> "TensorPoly":
        return cls({(ka, kb): ca * cb
                    for ka, ca in f.terms.items() for kb, cb in g.terms.items()})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return TensorPoly(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return TensorPoly({k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, TensorPoly) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        body = " + ".join(f"({c}) [{a}|{b}]" for (a, b), c in sorted(self.terms.items()))
        return f"TensorPoly({body or 0})"


def m(ctx: QContext, T: TensorPoly) -> NormalPolynomial:
    """Multiplication map ``Pol (x) Pol -> Pol``."""
    out = {}
    for (ka, kb), c in T.terms.items():
        for key, v in monomial_product(ctx, ka, kb).items():
            out[key] = out.get(key, 0) + c * v
    return NormalPolynomial(out)


def _box_weights(ctx):
    qm2 = ctx.pow(-2)
    return ((0, qm2), (1, -qm2 * (1 + qm2)), (2, qm2 * qm2))


def box_tilde(ctx: QContext, T: TensorPoly, conv=DEFAULT_CONVENTION) -> TensorPoly:
    conv = Convention(conv)
    weights = _box_weights(ctx)
    out = {}
    for (ka, kb), c in T.terms.items():
        da = partial(ctx, NormalPolynomial({ka: 1}), "r_zstar")
        db = partial(ctx, NormalPolynomial({kb: 1}), "l_z")
        if not da or not db:
            continue
        (ia, ja), ca = next(iter(da.terms.items()))
        (ib, jb), cb = next(iter(db.terms.items()))
        base = c * ca * cb
        for a, w in weights:
            second = (ib + a, jb)
            if conv is Convention.RIGHT:
                firsts = {(ia, ja + a): Fraction(1)}
            else:
                firsts = monomial_product(ctx, (0, a), (ia, ja))
            for first, v in firsts.items():
                key = (first, second)
                out[key] = out.get(key, 0) + base * w * v
    return TensorPoly(out)


def p_j_coefficients(ctx: QContext, j: int):
    """``(q^-2j; q^2)_k / (q^2; q^2)_k^2 * q^2k`` for k = 0..j."""
    return [q_pochhammer(ctx, ctx.pow(-2 * j), k)
            / q_pochhammer(ctx, ctx.pow(2), k) ** 2 * ctx.pow(2 * k)
            for k in range(j + 1)]


def apply_factor(ctx: QContext, i: int, T: TensorPoly, conv=DEFAULT_CONVENTION) -> TensorPoly:
    """``F_i = 1 - q^2i ((1 - q^2)^2 B + 1 + q^2) + q^(4i+2)`` applied to ``T``."""
    q2 = ctx.pow(2)
    scalar = 1 + ctx.pow(4 * i + 2) - ctx.pow(2 * i) * (1 + q2)
    boxed = box_tilde(ctx, T, conv).scale(-ctx.pow(2 * i) * (1 - q2) ** 2)
    return T.scale(scalar) + boxed


def p_j_apply(ctx: QContext, j: int, T: TensorPoly, conv=DEFAULT_CONVENTION,
              factor_order=None) -> TensorPoly:
    """``p_j(B) T`` summed term by term as printed.

    The k-th term applies ``F_0, ..., F_{k-1}`` in turn. ``factor_order`` is
    a permutation of ``range(j)`` that changes the order in which the factors
    of every product are applied; the result must not depend on it.
    """
    if j < 0:
        raise ValueError("j must be non-negative")
    coeffs = p_j_coefficients(ctx, j)
    out = T.scale(coeffs[0])
    if factor_order is None:
        running = T
        for k in range(1, j + 1):
            running = apply_factor(ctx, k - 1, running, conv)
            out = out + running.scale(coeffs[k])
        return out
    rank = {i: pos for pos, i in enumerate(factor_order)}
    for k in range(1, j + 1):
        running = T
        for i in sorted(range(k), key=rank.__getitem__):
            running = apply_factor(ctx, i, running, conv)
        out = out + running.scale(coeffs[k])
    return out


def _star_rational(ctx, f, g, N, conv):
    """Star product of rational polynomials as a list of t-slices."""
    T = TensorPoly.tensor(f, g)
    partial_sums = [m(ctx, p_j_apply(ctx, j, T, conv)) for j in range(N + 1)]
    slices = [partial_sums[0]]
    for n in range(1, N + 1):
        slices.append(partial_sums[n] - partial_sums[n - 1])
    return slices


def star(ctx: QContext, f: NormalPolynomial, g: NormalPolynomial, N: int,
         conv=DEFAULT_CONVENTION) -> NormalPolynomial:
    """``f * g`` modulo t^(N+1), as a polynomial with TSeries coefficients.

    Either argument may already carry series coefficients; the product is
    extended t-bilinearly.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    conv = Convention(conv)
    total = [NormalPolynomial.zero() for _ in range(N + 1)]
    for a, fa in enumerate(f.t_slices()[: N + 1]):
        if not fa:
            continue
        for b, gb in enumerate(g.t_slices()[: N + 1 - a]):
            if not gb:
                continue
            for n, s in enumerate(_star_rational(ctx, fa, gb, N - a - b, conv)):
                total[a + b + n] = total[a + b + n] + s
    return NormalPolynomial.from_slices(total, N)


def c_term(ctx: QContext, f, g, j: int, conv=DEFAULT_CONVENTION) -> NormalPolynomial:
    """Coefficient ``C_j(f, g)`` of ``t^j`` in ``f * g``."""
    if j < 1:
        raise ValueError("j must be >= 1")
    return _star_rational(ctx, f, g, j, Convention(conv))[j]


@dataclass
class AssociativityReport:
    ok: bool
    t_order: int = None
    monomial: tuple = None
    left: Fraction = None
    right: Fraction = None

    def __bool__(self):
        return self.ok


def first_difference(F: NormalPolynomial, G: NormalPolynomial, N: int):
    """First ``(t-order, (i, j), lhs, rhs)`` where two series polynomials differ."""
    fs, gs = F.t_slices(), G.t_slices()
    for n in range(N + 1):
        a = fs[n] if n < len(fs) else NormalPolynomial.zero()
        b = gs[n] if n < len(gs) else NormalPolynomial.zero()
        if a != b:
            for key in sorted(set(a.terms) | set(b.terms)):
                if a.terms.get(key, 0) != b.terms.get(key, 0):
                    return n, key, a.terms.get(key, Fraction(0)), b.terms.get(key, Fraction(0))
    return None


def verify_associativity(ctx: QContext, f, g, h, N: int, conv=DEFAULT_CONVENTION):
    lhs = star(ctx, star(ctx, f, g, N, conv), h, N, conv)
    rhs = star(ctx, f, star(ctx, g, h, N, conv), N, conv)
    diff = first_difference(lhs, rhs, N)
    if diff is None:
        return AssociativityReport(True)
    return AssociativityReport(False, *diff)
