"""``qdisc`` command-line front end."""

import argparse
import json
import sys

from . import fock, qforms, qpoly, star, suite
from .qpoly import NormalPolynomial, format_poly
from .scalars import QContext, as_rational

DERIVE = {"lz": "l_z", "lzs": "l_zstar", "rz": "r_z", "rzs": "r_zstar"}


def series_terms(F: NormalPolynomial):
    """``[(k, poly_k), ...]`` for the nonzero t-slices (t^0 always included)."""
    slices = F.t_slices()
    return [(k, s) for k, s in enumerate(slices) if s or k == 0]


def to_json(F: NormalPolynomial, cfg, convention):
    terms = [{"t": k,
              "monomials": [{"i": i, "j": j, "coeff": str(c)} for (i, j), c in s.items()]}
             for k, s in series_terms(F)]
    return {"q": str(cfg.q), "torder": cfg.torder, "convention": convention, "terms": terms}


def dumps(obj) -> str:
    """Canonical JSON: stable key order and separators."""
    return json.dumps(obj, sort_keys=True, indent=2)


def format_series(F: NormalPolynomial, N: int, vanishing_note=None) -> str:
    terms = series_terms(F)
    if len(terms) == 1:
        text = format_poly(terms[0][1])
        if vanishing_note and N >= 1:
            text += f"\n# {vanishing_note} for j >= 1 up to N = {N}"
        return text
    return "\n".join(f"t^{k}: {format_poly(s)}" for k, s in terms)


def _q(text):
    try:
        q = as_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")
    if not 0 < q < 1:
        raise argparse.ArgumentTypeError("q must lie strictly between 0 and 1")
    return q


def _nonneg(text):
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=_q, default=as_rational("1/2"), help="deformation parameter p/r in (0, 1)")
    common.add_argument("--torder", type=_nonneg, default=3, help="keep series modulo t^(N+1)")
    common.add_argument("--fock-dim", type=int, default=None, help="override the Fock dimension M")
    common.add_argument("--convention", choices=("left", "right", "auto"), default="auto")
    common.add_argument("--output", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(
        prog="qdisc", description="Star product on the quantum disc, in exact arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("normalize", parents=[common], help="normal-order an expression").add_argument("expr")
    for name, helptext in (("star", "star product of two expressions"),
                           ("oracle-star", "star product read off the operator representation")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("left")
        p.add_argument("right")
    p = sub.add_parser("cterm", parents=[common], help="coefficient C_j of t^j in the star product")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("j", type=int)
    sub.add_parser("berezin", parents=[common],
                   help="Berezin transform of an anti-normal (z*^i z^j) expression").add_argument("expr")
    p = sub.add_parser("derive", parents=[common], help="apply a partial derivative")
    p.add_argument("expr")
    p.add_argument("--which", choices=sorted(DERIVE), required=True)
    sub.add_parser("verify", parents=[common], help="run the self-verification suite")
    return parser


def _emit(cfg, F, convention="n/a", note=None, out=sys.stdout):
    if cfg.output == "json":
        print(dumps(to_json(F, cfg, convention)), file=out)
    else:
        print(format_series(F, cfg.torder, note), file=out)


def run(argv=None, out=sys.stdout) -> int:
    cfg = build_parser().parse_args(argv)
    ctx = QContext(cfg.q)
    N = cfg.torder
    norm = lambda text: qpoly.parse_normal(ctx, text)  # noqa: E731
    try:
        if cfg.command == "normalize":
            _emit(cfg, norm(cfg.expr), out=out)
        elif cfg.command == "derive":
            _emit(cfg, qforms.partial(ctx, norm(cfg.expr), DERIVE[cfg.which]), out=out)
        elif cfg.command == "star":
            conv = suite.resolve_convention(ctx, cfg.convention)
            F = star.star(ctx, norm(cfg.left), norm(cfg.right), N, conv)
            _emit(cfg, F, conv.value, "C_j = 0", out=out)
        elif cfg.command == "cterm":
            conv = suite.resolve_convention(ctx, cfg.convention)
            C = star.c_term(ctx, norm(cfg.left), norm(cfg.right), cfg.j, conv)
            _emit(cfg, C, conv.value, out=out)
        elif cfg.command == "oracle-star":
            F = fock.oracle_star(ctx, norm(cfg.left), norm(cfg.right), N, cfg.fock_dim)
            _emit(cfg, F, note="t^j terms vanish", out=out)
        elif cfg.command == "berezin":
            F = fock.berezin_transform(ctx, qpoly.parse_anti_normal(cfg.expr), N, cfg.fock_dim)
            _emit(cfg, F, note="t^j terms vanish", out=out)
        elif cfg.command == "verify":
            conv = suite.resolve_convention(ctx, cfg.convention)
            checks = suite.run_suite(ctx, N, conv, cfg.seed)
            ok = all(c.ok for c in checks)
            if cfg.output == "json":
                print(dumps({"q": str(cfg.q), "torder": N, "convention": conv.value, "ok": ok,
                             "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail}
                                        for c in checks]}), file=out)
            else:
                print(f"q = {cfg.q}, N = {N}, convention = {conv.value}", file=out)
                for c in checks:
                    print(c.line(), file=out)
                print(f"{sum(c.ok for c in checks)}/{len(checks)} checks passed", file=out)
            return 0 if ok else 1
    except qpoly.ParseError as exc:
        print(f"qdisc: parse error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"qdisc: {exc}", file=sys.stderr)
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
