"""Self-verification: property checks shared by ``qdisc verify`` and the tests.

Every check returns a :class:`Check`; failures carry a concrete
counterexample in ``detail``.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import fock, qforms, qpoly, star
from .qpoly import Z, ZSTAR, NormalPolynomial
from .scalars import QContext, TSeries, q_pochhammer, series_inv

P = NormalPolynomial.monomial

CALIBRATION_PAIRS = (("z*^2", "z^2"), ("z z*", "z* z"), ("z*", "z^2 z*"))
CALIBRATION_ORDER = 2


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self):
        tag = "PASS" if self.ok else "FAIL"
        return f"{tag} {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class Calibration:
    agrees: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)

    @property
    def selected(self):
        winners = [c for c, ok in self.agrees.items() if ok]
        return winners[0] if len(winners) == 1 else None


class CalibrationError(RuntimeError):
    pass


def calibrate(ctx: QContext) -> Calibration:
    """Compare both conventions with the operator representation."""
    result = Calibration()
    oracles = []
    for a, b in CALIBRATION_PAIRS:
        f, g = qpoly.parse_normal(ctx, a), qpoly.parse_normal(ctx, b)
        oracles.append((a, b, f, g, fock.oracle_star(ctx, f, g, CALIBRATION_ORDER)))
    for conv in star.Convention:
        result.failures[conv] = [
            (a, b) for a, b, f, g, want in oracles
            if star.star(ctx, f, g, CALIBRATION_ORDER, conv) != want]
        result.agrees[conv] = not result.failures[conv]
    return result


def resolve_convention(ctx: QContext, conv) -> star.Convention:
    if conv != "auto":
        return star.Convention(conv)
    cal = calibrate(ctx)
    if cal.selected is None:
        raise CalibrationError(f"calibration inconclusive: {cal.agrees}")
    return cal.selected


def monomials(max_z, max_zstar):
    return [(i, j) for i in range(max_z + 1) for j in range(max_zstar + 1)]


def random_word(rng, max_len=10):
    return tuple(rng.choice((Z, ZSTAR)) for _ in range(rng.randint(0, max_len)))


def fmt(f):
    if f.is_series:
        return " | ".join(f"t^{k}: {qpoly.format_poly(s)}" for k, s in enumerate(f.t_slices()))
    return qpoly.format_poly(f)


# -- individual checks ---------------------------------------------------------

def check_rational_field(ctx, rng):
    for _ in range(100):
        a = Fraction(rng.randint(-99, 99), rng.randint(1, 99))
        b = Fraction(rng.randint(1, 99), rng.randint(1, 99)) * rng.choice((-1, 1))
        if (a * b) / b != a:
            return Check("scalars.rational_field", False, f"a={a}, b={b}")
    return Check("scalars.rational_field", True)


def _rand_series(rng, order, invertible=False):
    coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(order + 1)]
    if invertible and coeffs[0] == 0:
        coeffs[0] = Fraction(1)
    return TSeries(coeffs)


def check_series_ring(ctx, rng, N):
    order = max(N, 1)
    for _ in range(30):
        x, y, w = (_rand_series(rng, order) for _ in range(3))
        if (x * y) * w != x * (y * w) or x * (y + w) != x * y + x * w:
            return Check("scalars.series_ring", False, f"x={x}, y={y}, w={w}")
        x, y = _rand_series(rng, order, True), _rand_series(rng, order, True)
        if series_inv(x * y) != series_inv(x) * series_inv(y) or x * x.inv() != 1:
            return Check("scalars.series_ring", False, f"inverse law fails for {x}, {y}")
    return Check("scalars.series_ring", True)


def check_pochhammer_zeros(ctx):
    for j in range(13):
        for k in range(j + 1, 13):
            if q_pochhammer(ctx, ctx.pow(-2 * j), k) != 0:
                return Check("scalars.pochhammer_zeros", False, f"j={j}, k={k}")
    return Check("scalars.pochhammer_zeros", True)


def check_relation1(ctx):
    got = qpoly.normal_order_word(ctx, (ZSTAR, Z))
    want = NormalPolynomial({(1, 1): ctx.pow(2), (0, 0): 1 - ctx.pow(2)})
    return Check("qpoly.relation1", got == want, "" if got == want else fmt(got))


def check_confluence(ctx, rng, count=100):
    for _ in range(count):
        w = random_word(rng)
        ref = qpoly.normal_order_word(ctx, w)
        if qpoly.normal_order_word(ctx, w, rng) != ref or qpoly.word_to_normal(ctx, w) != ref:
            return Check("qpoly.confluence", False, " ".join(w))
    return Check("qpoly.confluence", True, f"{count} random words")


def check_qpoly_laws(ctx, rng, count=20):
    mul = qpoly.multiply
    for _ in range(count):
        f, g, h = (qpoly.random_polynomial(rng, max_degree=4) for _ in range(3))
        if mul(ctx, mul(ctx, f, g), h) != mul(ctx, f, mul(ctx, g, h)):
            return Check("qpoly.algebra_laws", False, f"associativity: {fmt(f)}; {fmt(g)}; {fmt(h)}")
        lhs = qpoly.involution(mul(ctx, f, g))
        if lhs != mul(ctx, qpoly.involution(g), qpoly.involution(f)):
            return Check("qpoly.algebra_laws", False, f"involution: {fmt(f)}; {fmt(g)}")
        fg = mul(ctx, f, g)
        if fg.degree_z > f.degree_z + g.degree_z or fg.degree_zstar > f.degree_zstar + g.degree_zstar:
            return Check("qpoly.algebra_laws", False, f"degree: {fmt(f)}; {fmt(g)}")
    return Check("qpoly.algebra_laws", True)


def check_df_identity(ctx, max_deg=6):
    for j in range(max_deg + 1):
        for k in range(max_deg + 1):
            f = P(j, k)
            omega = qforms.differential(ctx, f)
            for which in qforms.WHICH:
                if qforms.partial(ctx, f, which) != qforms.partial(ctx, f, which, "engine"):
                    return Check("qforms.df_identity", False, f"{which} on z^{j} z*^{k}")
            right = (qforms.partial(ctx, f, "r_z"), qforms.partial(ctx, f, "r_zstar"))
            left = qforms.OneForm(qforms.partial(ctx, f, "l_z"), qforms.partial(ctx, f, "l_zstar"))
            if left != omega or qforms.OneForm.from_right(ctx, *right) != omega:
                return Check("qforms.df_identity", False, f"z^{j} z*^{k}")
    return Check("qforms.df_identity", True, f"all z^j z*^k, j, k <= {max_deg}")


def check_d_squared(ctx, max_deg=6):
    for j in range(max_deg + 1):
        for k in range(max_deg + 1 - j):
            if qforms.d_on_oneform(ctx, qforms.differential(ctx, P(j, k))):
                return Check("qforms.d_squared", False, f"z^{j} z*^{k}")
    return Check("qforms.d_squared", True)


def check_unit(ctx, N, conv, max_deg=3):
    one = NormalPolynomial.one()
    for (i, j) in monomials(max_deg, max_deg):
        if i + j > max_deg:
            continue
        f = P(i, j)
        want = f.as_series(N)
        if star.star(ctx, one, f, N, conv) != want or star.star(ctx, f, one, N, conv) != want:
            return Check("star.unit", False, f"z^{i} z*^{j}")
    return Check("star.unit", True)


def check_star_t0_and_hermiticity(ctx, N, conv, max_deg=2):
    mons = [m for m in monomials(max_deg, max_deg) if sum(m) <= max_deg]
    for a in mons:
        for b in mons:
            f, g = P(*a), P(*b)
            fg = star.star(ctx, f, g, N, conv)
            if fg.t_coefficient(0) != qpoly.multiply(ctx, f, g):
                return Check("star.t0_and_hermiticity", False, f"t^0 slice for {a} * {b}")
            rev = star.star(ctx, qpoly.involution(g), qpoly.involution(f), N, conv)
            if qpoly.involution(fg) != rev:
                return Check("star.t0_and_hermiticity", False, f"hermiticity for {a} * {b}")
    return Check("star.t0_and_hermiticity", True)


def check_star_associativity(ctx, rng, N, conv, count=5):
    for _ in range(count):
        f, g, h = (qpoly.random_polynomial(rng, max_degree=2) for _ in range(3))
        rep = star.verify_associativity(ctx, f, g, h, N, conv)
        if not rep:
            return Check("star.associativity", False,
                         f"({fmt(f)}; {fmt(g)}; {fmt(h)}) differ at t^{rep.t_order}, "
                         f"monomial {rep.monomial}: {rep.left} vs {rep.right}")
    return Check("star.associativity", True, f"{count} random triples")


def check_relation3(ctx, N, M=20):
    rep = fock.verify_relation3(ctx, M, N)
    detail = f"M={M}, window={rep.window}"
    if not rep:
        detail += f", mismatch (row, col, t-order)={rep.mismatch}"
    return Check("fock.relation3", rep.ok, detail)


def check_oracle_agreement(ctx, N, conv, max_deg=2):
    mons = monomials(max_deg, max_deg)
    for a in mons:
        for b in mons:
            f, g = P(*a), P(*b)
            got, want = star.star(ctx, f, g, N, conv), fock.oracle_star(ctx, f, g, N)
            diff = star.first_difference(got, want, N)
            if diff is not None:
                n, key, x, y = diff
                return Check("fock.oracle_agreement", False,
                             f"z^{a[0]} z*^{a[1]} * z^{b[0]} z*^{b[1]}: t^{n} coefficient of "
                             f"z^{key[0]} z*^{key[1]} is {x}, oracle says {y}")
    return Check("fock.oracle_agreement", True, f"{len(mons) ** 2} monomial pairs")


def check_calibration(ctx, conv):
    cal = calibrate(ctx)
    conv = star.Convention(conv)
    other = next(c for c in star.Convention if c is not conv)
    ok = cal.agrees[conv] and not cal.agrees[other]
    detail = f"agreement: {', '.join(f'{c.value}={cal.agrees[c]}' for c in star.Convention)}"
    if cal.failures[conv]:
        detail += f"; active convention fails on {cal.failures[conv][0]}"
    return Check("star.calibration", ok, detail)


def run_suite(ctx: QContext, N: int, conv, seed=0, oracle_degree=2):
    """Run every check in a fixed order and return the list of results."""
    conv = star.Convention(conv)
    rng = random.Random(seed)
    return [
        check_rational_field(ctx, rng),
        check_series_ring(ctx, rng, N),
        check_pochhammer_zeros(ctx),
        check_relation1(ctx),
        check_confluence(ctx, rng),
        check_qpoly_laws(ctx, rng),
        check_df_identity(ctx),
        check_d_squared(ctx),
        check_unit(ctx, N, conv),
        check_star_t0_and_hermiticity(ctx, N, conv),
        check_star_associativity(ctx, rng, N, conv),
        check_relation3(ctx, N),
        check_oracle_agreement(ctx, N, conv, oracle_degree),
        check_calibration(ctx, conv),
    ]
