"""Exact coefficient arithmetic.

Rationals are plain :class:`fractions.Fraction`. On top of them this module
provides a fixed-``q`` context with cached (possibly negative) powers, and
truncated formal power series in the deformation parameter ``t``.
"""

from fractions import Fraction
from numbers import Rational


class NotInvertible(ArithmeticError):
    pass


class OrderMismatch(ValueError):
    pass


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/r"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str, Rational)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class QContext:
    """A fixed rational ``0 < q < 1`` with memoized integer powers."""

    __slots__ = ("q", "_powers")

    def __init__(self, q):
        q = as_rational(q)
        if not 0 < q < 1:
            raise ValueError(f"q must satisfy 0 < q < 1, got {q}")
        self.q = q
        self._powers = {0: Fraction(1)}

    def pow(self, n: int) -> Fraction:
        try:
            return self._powers[n]
        except KeyError:
            value = self.q ** n
            self._powers[n] = value
            return value

    def pochhammer(self, a, m: int) -> Fraction:
        return q_pochhammer(self, a, m)

    def __eq__(self, other):
        return isinstance(other, QContext) and other.q == self.q

    def __hash__(self):
        return hash(("QContext", self.q))

    def __repr__(self):
        return f"QContext(q={self.q})"


def q_pochhammer(ctx: QContext, a, m: int) -> Fraction:
    """(a; q^2)_m = (1 - a)(1 - q^2 a)...(1 - q^{2(m-1)} a)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    a = as_rational(a)
    result = Fraction(1)
    for i in range(m):
        result *= 1 - ctx.pow(2 * i) * a
    return result


class TSeries:
    """Power series in ``t`` with rational coefficients, kept modulo t^(order+1).

    Instances are immutable. Mixing with plain rationals promotes the
    rational to a constant series; mixing two series of different orders
    raises :class:`OrderMismatch`.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, order=None):
        coeffs = [as_rational(c) for c in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("order must be non-negative")
            coeffs = (coeffs + [Fraction(0)] * (order + 1))[: order + 1]
        if not coeffs:
            raise ValueError("a series needs at least one coefficient")
        self.coeffs = tuple(coeffs)

    @classmethod
    def const(cls, c, order: int) -> "TSeries":
        return cls([c], order)

    @classmethod
    def zero(cls, order: int) -> "TSeries":
        return cls([0], order)

    @classmethod
    def monomial(cls, k: int, order: int, c=1) -> "TSeries":
        """c * t^k, which is zero when k > order."""
        coeffs = [Fraction(0)] * (order + 1)
        if k <= order:
            coeffs[k] = as_rational(c)
        return cls(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, TSeries):
            if other.order != self.order:
                raise OrderMismatch(
                    f"series orders differ: {self.order} vs {other.order}")
            return other
        if isinstance(other, (int, Fraction)):
            return TSeries.const(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return TSeries([a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return TSeries([-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return TSeries([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TSeries([a * other for a in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = len(self.coeffs)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * n
        for i in range(n):
            if a[i]:
                ai = a[i]
                for j in range(n - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return TSeries(out)

    __rmul__ = __mul__

    def inv(self) -> "TSeries":
        return series_inv(self)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return TSeries([a / other for a in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def shift(self, k: int) -> "TSeries":
        """Multiply by t^k, truncating at the same order."""
        if k == 0:
            return self
        n = len(self.coeffs)
        return TSeries(([Fraction(0)] * k + list(self.coeffs))[:n])

    def truncate(self, order: int) -> "TSeries":
        return TSeries(self.coeffs, order)

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, TSeries):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"TSeries({[str(c) for c in self.coeffs]})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                parts.append(f"({c})" + ("" if k == 0 else f"*t^{k}"))
        return " + ".join(parts) if parts else "0"


def series_add(x: TSeries, y: TSeries) -> TSeries:
    if x.order != y.order:
        raise OrderMismatch(f"series orders differ: {x.order} vs {y.order}")
    return x + y


def series_mul(x: TSeries, y: TSeries) -> TSeries:
    if x.order != y.order:
        raise OrderMismatch(f"series orders differ: {x.order} vs {y.order}")
    return x * y


def series_inv(x: TSeries) -> TSeries:
    """Multiplicative inverse modulo t^(N+1); needs a nonzero constant term."""
    a = x.coeffs
    if a[0] == 0:
        raise NotInvertible("constant term is zero")
    n = len(a)
    b = [Fraction(0)] * n
    b[0] = 1 / a[0]
    for k in range(1, n):
        acc = sum((a[i] * b[k - i] for i in range(1, k + 1) if a[i]), Fraction(0))
        b[k] = -acc * b[0]
    return TSeries(b)
