"""Differential calculus on Pol(C)_q.

Form words are tuples over the letters ``z``, ``z*``, ``dz``, ``dz*``. A
rewriting engine brings any word to *left-normal* form (differentials first,
then ``z^i z*^j``) or *right-normal* form (``z^i z*^j`` first, differentials
last). The exchange relations are::

    dz z = q^2 z dz        dz z* = q^-2 z* dz
    dz* z* = q^-2 z* dz*   dz* z = q^2 z dz*     (images under *)
    dz dz = dz* dz* = 0    dz dz* = -q^-2 dz* dz

Partial derivatives are read off ``df`` in either normal form. The
closed-form monomial rules in :func:`partial` are fast paths; the engine is
kept alongside as the reference.
"""

from fractions import Fraction
from functools import lru_cache

from .qpoly import Z, ZSTAR, NormalPolynomial
from .scalars import QContext

D = "dz"
DSTAR = "dz*"

_DIFF = {Z: D, ZSTAR: DSTAR}
_STAR = {Z: ZSTAR, ZSTAR: Z, D: DSTAR, DSTAR: D}

LEFT = "left"
RIGHT = "right"

WHICH = ("l_z", "l_zstar", "r_z", "r_zstar")


def _exchange_table(ctx: QContext, side):
    """Directed two-letter rules ``pair -> [(coeff, replacement), ...]``."""
    q2, qm2 = ctx.pow(2), ctx.pow(-2)
    rules = {
        (ZSTAR, Z): [(q2, (Z, ZSTAR)), (1 - q2, ())],
        (D, D): [],
        (DSTAR, DSTAR): [],
        (DSTAR, D): [(-q2, (D, DSTAR))],
    }
    if side == LEFT:
        rules.update({
            (Z, D): [(qm2, (D, Z))],
            (ZSTAR, D): [(q2, (D, ZSTAR))],
            (Z, DSTAR): [(qm2, (DSTAR, Z))],
            (ZSTAR, DSTAR): [(q2, (DSTAR, ZSTAR))],
        })
    elif side == RIGHT:
        rules.update({
            (D, Z): [(q2, (Z, D))],
            (D, ZSTAR): [(qm2, (ZSTAR, D))],
            (DSTAR, Z): [(q2, (Z, DSTAR))],
            (DSTAR, ZSTAR): [(qm2, (ZSTAR, DSTAR))],
        })
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return rules


def commute_generator_past_differential(ctx: QContext, pair, side):
    """Apply one exchange rule to a generator/differential pair.

    ``side`` says where the differential should end up. Returns a list of
    ``(coeff, word)``; ``pair`` itself is returned unchanged when it is
    already in order for that side.
    """
    pair = tuple(pair)
    rule = _exchange_table(ctx, side).get(pair)
    if rule is None:
        return [(Fraction(1), pair)]
    return list(rule)


@lru_cache(maxsize=None)
def _reduce(q: Fraction, word, side):
    rules = _exchange_table(QContext(q), side)
    pending = {word: Fraction(1)}
    done = {}
    while pending:
        w, c = pending.popitem()
        for k in range(len(w) - 1):
            rule = rules.get(w[k:k + 2])
            if rule is not None:
                for coeff, repl in rule:
                    nw = w[:k] + repl + w[k + 2:]
                    pending[nw] = pending.get(nw, 0) + c * coeff
                break
        else:
            done[w] = done.get(w, 0) + c
    return tuple((w, c) for w, c in done.items() if c)


def reduce_word(ctx: QContext, word, side=LEFT):
    """Normal form of a form word as ``{canonical word: Fraction}``."""
    return dict(_reduce(ctx.q, tuple(word), side))


def _split(word):
    """Canonical word -> (differential prefix/suffix, (i, j))."""
    diffs = tuple(x for x in word if x in (D, DSTAR))
    return diffs, (word.count(Z), word.count(ZSTAR))


def _monomial_word(i, j):
    return (Z,) * i + (ZSTAR,) * j


def _collect(ctx, combo, side):
    """Reduce a ``{word: coeff}`` combination; group by differential part."""
    groups = {}
    for w, c in combo.items():
        for nw, v in reduce_word(ctx, w, side).items():
            diffs, key = _split(nw)
            g = groups.setdefault(diffs, {})
            g[key] = g.get(key, 0) + c * v
    return {d: NormalPolynomial(g) for d, g in groups.items()}


class OneForm:
    """``dz . p + dz* . r`` (left-normal coefficients)."""

    __slots__ = ("p", "r")

    def __init__(self, p=None, r=None):
        self.p = p if p is not None else NormalPolynomial.zero()
        self.r = r if r is not None else NormalPolynomial.zero()

    def _words(self, side):
        combo = {}
        for letter, poly in ((D, self.p), (DSTAR, self.r)):
            for (i, j), c in poly.terms.items():
                w = _monomial_word(i, j)
                w = (letter,) + w if side == LEFT else w + (letter,)
                combo[w] = combo.get(w, 0) + c
        return combo

    def to_right(self, ctx: QContext):
        """Right-normal coefficients ``(p~, r~)`` with ``p~ . dz + r~ . dz*``."""
        groups = _collect(ctx, self._words(LEFT), RIGHT)
        zero = NormalPolynomial.zero()
        return groups.get((D,), zero), groups.get((DSTAR,), zero)

    @classmethod
    def from_right(cls, ctx: QContext, pt, rt):
        groups = _collect(ctx, cls(pt, rt)._words(RIGHT), LEFT)
        zero = NormalPolynomial.zero()
        return cls(groups.get((D,), zero), groups.get((DSTAR,), zero))

    def __eq__(self, other):
        return isinstance(other, OneForm) and self.p == other.p and self.r == other.r

    def __add__(self, other):
        return OneForm(self.p + other.p, self.r + other.r)

    def __bool__(self):
        return bool(self.p) or bool(self.r)

    def __repr__(self):
        return f"OneForm(dz*{self.p!r} + dz**{self.r!r})"


class TwoForm:
    """``dz . dz* . c``; the only independent 2-form."""

    __slots__ = ("c",)

    def __init__(self, c=None):
        self.c = c if c is not None else NormalPolynomial.zero()

    def __eq__(self, other):
        return isinstance(other, TwoForm) and self.c == other.c

    def __bool__(self):
        return bool(self.c)

    def __repr__(self):
        return f"TwoForm(dz dz* {self.c!r})"


def _d_word(word):
    """Graded Leibniz rule on a form word, with d(dz) = d(dz*) = 0."""
    out = {}
    sign = 1
    for k, letter in enumerate(word):
        if letter in _DIFF:
            w = word[:k] + (_DIFF[letter],) + word[k + 1:]
            out[w] = out.get(w, 0) + sign
        else:
            sign = -sign
    return out


def _d_combo(combo):
    out = {}
    for w, c in combo.items():
        for nw, s in _d_word(w).items():
            out[nw] = out.get(nw, 0) + s * c
    return out


def differential(ctx: QContext, f: NormalPolynomial) -> OneForm:
    combo = {_monomial_word(i, j): c for (i, j), c in f.terms.items()}
    groups = _collect(ctx, _d_combo(combo), LEFT)
    zero = NormalPolynomial.zero()
    return OneForm(groups.get((D,), zero), groups.get((DSTAR,), zero))


def d_on_oneform(ctx: QContext, omega: OneForm) -> TwoForm:
    groups = _collect(ctx, _d_combo(omega._words(LEFT)), LEFT)
    extra = set(groups) - {(D, DSTAR)}
    assert all(not groups[k] for k in extra), extra
    return TwoForm(groups.get((D, DSTAR), NormalPolynomial.zero()))


def form_involution(word):
    """``*`` on a form word: reverse, star each letter, graded sign.

    Returns ``(sign, word)``.
    """
    k = sum(1 for x in word if x in (D, DSTAR))
    sign = -1 if (k * (k - 1) // 2) % 2 else 1
    return sign, tuple(_STAR[x] for x in reversed(word))


def _partial_engine(ctx, f, which):
    if which.startswith("l_"):
        omega = differential(ctx, f)
        return omega.p if which == "l_z" else omega.r
    pt, rt = differential(ctx, f).to_right(ctx)
    return pt if which == "r_z" else rt


def _closed_factor(ctx, which, j, k):
    """Scalar factor of a partial on ``z^j z*^k`` (j, k already checked > 0)."""
    q = ctx
    if which == "l_z":
        return (1 - q.pow(-2 * j)) / (1 - q.pow(-2))
    if which == "l_zstar":
        return q.pow(-2 * j) * (1 - q.pow(2 * k)) / (1 - q.pow(2))
    if which == "r_z":
        return q.pow(-2 * k) * (1 - q.pow(2 * j)) / (1 - q.pow(2))
    return (1 - q.pow(-2 * k)) / (1 - q.pow(-2))


def partial(ctx: QContext, f: NormalPolynomial, which: str, method="closed") -> NormalPolynomial:
    """One of the four partial derivatives ``l_z``, ``l_zstar``, ``r_z``, ``r_zstar``.

    ``l_*`` are the coefficients of ``df`` with differentials on the left,
    ``r_*`` with differentials on the right. ``method="engine"`` extracts them
    from :func:`differential` instead of using the monomial formulas.
    """
    if which not in WHICH:
        raise ValueError(f"unknown partial {which!r}; expected one of {WHICH}")
    if method == "engine":
        return _partial_engine(ctx, f, which)
    if method != "closed":
        raise ValueError(f"unknown method {method!r}")
    out = {}
    by_z = which.endswith("_z")
    for (j, k), c in f.terms.items():
        if (j if by_z else k) == 0:
            continue
        key = (j - 1, k) if by_z else (j, k - 1)
        out[key] = c * _closed_factor(ctx, which, j, k)
    return NormalPolynomial(out)
