"""The involutive algebra Pol(C)_q.

Elements are kept in normal form ``sum a_ij z^i z*^j`` as a sparse map
``(i, j) -> coefficient``.  A coefficient is either a Fraction or a
:class:`~qdisc.scalars.TSeries`; the structural constants of the algebra are
always rational.

The only relation is ``z* z = q^2 z z* + (1 - q^2)``.
"""

import random
import re
from fractions import Fraction
from functools import lru_cache

from .scalars import QContext, TSeries, as_rational

Z = "z"
ZSTAR = "z*"


def _is_zero(c):
    return not c


class _SparsePoly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for key, c in dict(terms).items():
                if isinstance(c, (int, str)):
                    c = as_rational(c)
                if not _is_zero(c):
                    clean[(int(key[0]), int(key[1]))] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = {k: c for k, c in terms.items() if not _is_zero(c)}
        return obj

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def one(cls):
        return cls._raw({(0, 0): Fraction(1)})

    @classmethod
    def monomial(cls, i, j, c=1):
        return cls({(i, j): c})

    def items(self):
        """Terms in canonical (descending ``(i, j)``) order."""
        return sorted(self.terms.items(), reverse=True)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, type(self)):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == type(self)({(0, 0): other})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction, TSeries)):
            other = type(self)._raw({(0, 0): other})
        if not isinstance(other, type(self)):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return type(self)._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        """Multiply every coefficient by the scalar ``c``."""
        if isinstance(c, (int, str)):
            c = as_rational(c)
        return type(self)._raw({k: c * v for k, v in self.terms.items()})

    @property
    def degree_z(self):
        return max((k[0] for k in self.terms), default=0)

    @property
    def degree_zstar(self):
        return max((k[1] for k in self.terms), default=0)

    @property
    def degree(self):
        return max((k[0] + k[1] for k in self.terms), default=0)

    @property
    def is_series(self):
        return any(isinstance(c, TSeries) for c in self.terms.values())

    def map_coeffs(self, fn):
        return type(self)._raw({k: fn(c) for k, c in self.terms.items()})


class NormalPolynomial(_SparsePoly):
    """``sum a_ij z^i z*^j``."""

    __slots__ = ()

    def __repr__(self):
        return f"NormalPolynomial({format_poly(self)})"

    def t_slices(self):
        """Split a series-valued polynomial into rational polynomials per t-order."""
        if not self.is_series:
            return [self]
        order = next(c.order for c in self.terms.values() if isinstance(c, TSeries))
        slices = []
        for k in range(order + 1):
            slices.append(NormalPolynomial._raw({
                key: (c[k] if isinstance(c, TSeries) else (c if k == 0 else 0))
                for key, c in self.terms.items()}))
        return slices

    def t_coefficient(self, k):
        slices = self.t_slices()
        return slices[k] if k < len(slices) else NormalPolynomial.zero()

    @classmethod
    def from_slices(cls, slices, order):
        """Inverse of :meth:`t_slices`: rebuild a TSeries-valued polynomial."""
        coeffs = {}
        for k, poly in enumerate(slices[: order + 1]):
            for key, c in poly.terms.items():
                coeffs.setdefault(key, [Fraction(0)] * (order + 1))[k] = c
        return cls._raw({key: TSeries(v) for key, v in coeffs.items()})

    def as_series(self, order):
        """Promote rational coefficients to constant series of the given order."""
        return self.map_coeffs(
            lambda c: c.truncate(order) if isinstance(c, TSeries)
            else TSeries.const(c, order))


class AntiNormalPolynomial(_SparsePoly):
    """``sum a_ij z*^i z^j`` (the contravariant-symbol ordering)."""

    __slots__ = ()

    def __repr__(self):
        body = " + ".join(f"({c}) z*^{i} z^{j}" for (i, j), c in self.items())
        return f"AntiNormalPolynomial({body or 0})"


def z():
    return NormalPolynomial.monomial(1, 0)


def zstar():
    return NormalPolynomial.monomial(0, 1)


# -- rewriting ---------------------------------------------------------------

def _redexes(word):
    return [k for k in range(len(word) - 1)
            if word[k] == ZSTAR and word[k + 1] == Z]


def normal_order_word(ctx: QContext, word, rng=None) -> NormalPolynomial:
    """Normal-order a word in z, z* by rewriting ``z* z -> q^2 z z* + (1 - q^2)``.

    Without ``rng`` the leftmost redex is always rewritten; with an
    ``random.Random`` instance the redex is chosen at random, which is how
    confluence is exercised.
    """
    q2 = ctx.pow(2)
    pending = {tuple(word): Fraction(1)}
    result = {}
    while pending:
        w, c = pending.popitem()
        if not c:
            continue
        spots = _redexes(w)
        if not spots:
            key = (w.count(Z), w.count(ZSTAR))
            result[key] = result.get(key, 0) + c
            continue
        k = rng.choice(spots) if rng is not None else spots[0]
        swapped = w[:k] + (Z, ZSTAR) + w[k + 2:]
        dropped = w[:k] + w[k + 2:]
        pending[swapped] = pending.get(swapped, 0) + c * q2
        pending[dropped] = pending.get(dropped, 0) + c * (1 - q2)
    return NormalPolynomial(result)


@lru_cache(maxsize=None)
def _reorder(q: Fraction, b: int, c: int):
    """Normal form of ``z*^b z^c`` as a tuple of ``(k, coeff)`` meaning
    ``coeff * z^(c-k) z*^(b-k)``."""
    if b == 0 or c == 0:
        return ((0, Fraction(1)),)
    q2c = q ** (2 * c)
    out = {}
    # z*^b z^c = q^{2c} (z*^{b-1} z^c) z* + (1 - q^{2c}) z*^{b-1} z^{c-1}
    for k, v in _reorder(q, b - 1, c):
        out[k] = out.get(k, 0) + q2c * v
    for k, v in _reorder(q, b - 1, c - 1):
        out[k + 1] = out.get(k + 1, 0) + (1 - q2c) * v
    return tuple(sorted((k, v) for k, v in out.items() if v))


def monomial_product(ctx: QContext, a, b):
    """Normal form of ``(z^a0 z*^a1)(z^b0 z*^b1)`` as ``{(i, j): Fraction}``."""
    (i1, j1), (i2, j2) = a, b
    return {(i1 + i2 - k, j1 + j2 - k): v for k, v in _reorder(ctx.q, j1, i2)}


def multiply(ctx: QContext, f: NormalPolynomial, g: NormalPolynomial) -> NormalPolynomial:
    out = {}
    for ka, ca in f.terms.items():
        for kb, cb in g.terms.items():
            cab = ca * cb
            for key, v in monomial_product(ctx, ka, kb).items():
                term = cab * v
                out[key] = out[key] + term if key in out else term
    return NormalPolynomial._raw(out)


def power(ctx: QContext, f: NormalPolynomial, n: int) -> NormalPolynomial:
    result = NormalPolynomial.one()
    for _ in range(n):
        result = multiply(ctx, result, f)
    return result


def involution(f: NormalPolynomial) -> NormalPolynomial:
    """``(a z^i z*^j)* = a z^j z*^i``; coefficients are real, hence unchanged."""
    return NormalPolynomial._raw({(j, i): c for (i, j), c in f.terms.items()})


def anti_to_normal(ctx: QContext, f: AntiNormalPolynomial) -> NormalPolynomial:
    out = NormalPolynomial.zero()
    for (i, j), c in f.terms.items():
        out = out + NormalPolynomial(
            {k: c * v for k, v in monomial_product(ctx, (0, i), (j, 0)).items()})
    return out


def word_to_normal(ctx: QContext, word) -> NormalPolynomial:
    """Fast normal ordering of a word by multiplying its letters."""
    result = NormalPolynomial.one()
    for letter in word:
        result = multiply(ctx, result, z() if letter == Z else zstar())
    return result


# -- parsing -------------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, message, text, pos):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.column = col


MAX_EXPONENT = 4096

_TOKEN = re.compile(r"(?P<int>\d+)|(?P<zs>z\*|zs)|(?P<z>z)|(?P<op>[-+/^()])")


def _tokenize(text):
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        tokens.append((m.group() if kind == "op" else kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    # A word sum is a dict {word tuple: Fraction}; products distribute.

    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = tok[1] or "end of input"
            raise ParseError(f"expected {kind!r}, found {what!r}", self.text, tok[2])
        self.i += 1
        return tok

    def uint(self):
        tok = self.take("int")
        n = int(tok[1])
        return n, tok[2]

    def expr(self):
        total = {}
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        while True:
            _add(total, self.term(), sign)
            if self.peek() in ("+", "-"):
                sign = -1 if self.take()[0] == "-" else 1
                continue
            return total

    def term(self):
        weight = Fraction(1)
        have_rational = False
        if self.peek() == "int":
            num, _ = self.uint()
            den = 1
            if self.peek() == "/":
                self.take()
                den, pos = self.uint()
                if den == 0:
                    raise ParseError("zero denominator", self.text, pos)
            weight = Fraction(num, den)
            have_rational = True
        product = {(): weight}
        nfactors = 0
        while self.peek() in ("z", "zs", "("):
            product = _mul(product, self.factor())
            nfactors += 1
        if not nfactors and not have_rational:
            tok = self.tokens[self.i]
            raise ParseError(f"expected a term, found {tok[1] or 'end of input'!r}",
                             self.text, tok[2])
        return product

    def factor(self):
        kind, _, _ = self.take()
        if kind == "(":
            base = self.expr()
            self.take(")")
        else:
            base = {(Z if kind == "z" else ZSTAR,): Fraction(1)}
        if self.peek() == "^":
            self.take()
            n, pos = self.uint()
            if n > MAX_EXPONENT:
                raise ParseError(f"exponent {n} exceeds {MAX_EXPONENT}", self.text, pos)
            out = {(): Fraction(1)}
            for _ in range(n):
                out = _mul(out, base)
            return out
        return base


def _add(total, part, sign=1):
    for w, c in part.items():
        v = total.get(w, 0) + sign * c
        if v:
            total[w] = v
        else:
            total.pop(w, None)


def _mul(a, b):
    out = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            _add(out, {wa + wb: ca * cb})
    return out


def parse(text: str):
    """Parse an expression into a list of ``(weight, word)`` pairs.

    Letter order inside each word is kept exactly as written. Words are
    listed in order of first appearance after distributing parentheses.
    """
    p = _Parser(text)
    total = p.expr()
    if p.peek() != "end":
        tok = p.tokens[p.i]
        raise ParseError(f"unexpected {tok[1]!r}", text, tok[2])
    return [(c, w) for w, c in total.items()]


def normalize(ctx: QContext, wordsum) -> NormalPolynomial:
    out = NormalPolynomial.zero()
    for c, w in wordsum:
        out = out + word_to_normal(ctx, w).scale(c)
    return out


def parse_normal(ctx: QContext, text: str) -> NormalPolynomial:
    return normalize(ctx, parse(text))


def parse_anti_normal(text: str) -> AntiNormalPolynomial:
    """Read an expression whose words are all of the form ``z*^i z^j``."""
    out = {}
    for c, w in parse(text):
        i = 0
        while i < len(w) and w[i] == ZSTAR:
            i += 1
        if any(letter != Z for letter in w[i:]):
            raise ValueError(f"word {' '.join(w)!r} is not in anti-normal order")
        key = (i, len(w) - i)
        out[key] = out.get(key, 0) + c
    return AntiNormalPolynomial(out)


# -- printing ------------------------------------------------------------------

def _monomial_str(i, j):
    parts = []
    if i:
        parts.append("z" if i == 1 else f"z^{i}")
    if j:
        parts.append("z*" if j == 1 else f"z*^{j}")
    return " ".join(parts)


def format_poly(f: NormalPolynomial) -> str:
    """Render a rational polynomial, highest ``(i, j)`` first, e.g. ``1/4 z z* + 3/4``."""
    pieces = []
    for (i, j), c in f.items():
        if isinstance(c, TSeries):
            raise TypeError("format_poly needs rational coefficients; use t_slices()")
        mono = _monomial_str(i, j)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag} {mono}"
        else:
            body = str(mag)
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(("+ " if c > 0 else "- ") + body)
    return " ".join(pieces) if pieces else "0"


def random_polynomial(rng: random.Random, max_degree=2, max_terms=3, max_num=5):
    """A random rational normal polynomial with small coefficients."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        i = rng.randint(0, max_degree)
        j = rng.randint(0, max_degree - i)
        num = rng.randint(-max_num, max_num) or 1
        terms[(i, j)] = Fraction(num, rng.randint(1, max_num))
    return NormalPolynomial(terms)
