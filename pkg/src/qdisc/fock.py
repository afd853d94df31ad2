"""Weighted-shift representation used as ground truth for the star product.

On the basis ``e_0, ..., e_{M-1}`` with ``|e_m|^2 = (q^2; q^2)_m / (q^2 t; q^2)_m``
the raising operator is ``Z e_m = e_{m+1}`` and its adjoint is
``Z* e_m = lambda_m e_{m-1}`` with ``lambda_m = (1 - q^{2m}) / (1 - q^{2m} t)``.
All entries are :class:`~qdisc.scalars.TSeries` of a common order ``N``.

Truncating to ``M`` basis vectors corrupts columns whose image leaves the
basis. Each :class:`BandMatrix` carries the number ``valid`` of leading
columns that are still exact; symbol recovery never reads past it.
"""

from dataclasses import dataclass
from functools import lru_cache

from .qpoly import Z, ZSTAR, AntiNormalPolynomial, NormalPolynomial
from .scalars import QContext, TSeries, q_pochhammer, series_inv


class InconsistentBand(ValueError):
    pass


class TruncationError(RuntimeError):
    pass


class WeightedBasis:
    """Truncated basis of dimension ``M`` with TSeries weights of order ``N``."""

    def __init__(self, ctx: QContext, M: int, N: int):
        if M < 2:
            raise ValueError("Fock dimension must be at least 2")
        if N < 0:
            raise ValueError("t-order must be non-negative")
        self.ctx, self.M, self.N = ctx, M, N
        self.lam = [TSeries.zero(N)]
        for k in range(1, M):
            qk = ctx.pow(2 * k)
            self.lam.append(series_inv(TSeries([1, -qk], N)) * (1 - qk))
        self._zhat = self._zstar = None
        self._powers = {}
        self._mu = None

    @classmethod
    @lru_cache(maxsize=64)
    def cached(cls, ctx: QContext, M: int, N: int) -> "WeightedBasis":
        """Shared instance per ``(q, M, N)``; bases are never mutated after use."""
        return cls(ctx, M, N)

    def mu(self):
        """``mu[j][m] = lambda_m lambda_{m-1} ... lambda_{m-j+1}`` for j <= m < M."""
        if self._mu is None:
            one = TSeries.const(1, self.N)
            mu = [[one] * self.M]
            for j in range(1, self.M):
                prev = mu[-1]
                mu.append([None] * j + [prev[m - 1] * self.lam[m] for m in range(j, self.M)])
            self._mu = mu
        return self._mu

    def norm_sq(self, m: int) -> TSeries:
        """``(q^2; q^2)_m / (q^2 t; q^2)_m`` expanded in t."""
        ctx, N = self.ctx, self.N
        den = TSeries.const(1, N)
        for i in range(m):
            den = den * TSeries([1, -ctx.pow(2 * i + 2)], N)
        return series_inv(den) * q_pochhammer(ctx, ctx.pow(2), m)

    def zero(self):
        return BandMatrix(self, {}, self.M, 0)

    def identity(self):
        one = TSeries.const(1, self.N)
        return BandMatrix(self, {0: {m: one for m in range(self.M)}}, self.M, 0)

    def shift_operators(self):
        if self._zhat is None:
            self._zhat = BandMatrix(
                self, {1: {m: TSeries.const(1, self.N) for m in range(self.M - 1)}},
                self.M - 1, 1)
            self._zstar = BandMatrix(
                self, {-1: {m: self.lam[m] for m in range(1, self.M)}}, self.M, -1)
        return self._zhat, self._zstar

    def power(self, letter, n):
        key = (letter, n)
        if key not in self._powers:
            zhat, zstar = self.shift_operators()
            base = zhat if letter == Z else zstar
            self._powers[key] = self.identity() if n == 0 else self.power(letter, n - 1) @ base
        return self._powers[key]


class BandMatrix:
    """Band-sparse matrix ``{diagonal d = row - col: {col: TSeries}}``.

    ``valid`` is the exact column window ``[0, valid)``; ``up`` bounds the
    upward reach ``row - col`` of any stored entry and is what products use
    to shrink the window.
    """

    __slots__ = ("basis", "diags", "valid", "up")

    def __init__(self, basis: WeightedBasis, diags, valid, up):
        self.basis = basis
        self.diags = {d: {c: v for c, v in col.items() if v}
                      for d, col in diags.items()}
        self.diags = {d: col for d, col in self.diags.items() if col}
        self.valid = max(0, min(valid, basis.M))
        self.up = up

    @property
    def M(self):
        return self.basis.M

    @property
    def band(self):
        return max((abs(d) for d in self.diags), default=0)

    def entry(self, row, col) -> TSeries:
        v = self.diags.get(row - col, {}).get(col)
        return v if v is not None else TSeries.zero(self.basis.N)

    def __add__(self, other):
        out = {d: dict(col) for d, col in self.diags.items()}
        for d, col in other.diags.items():
            tgt = out.setdefault(d, {})
            for c, v in col.items():
                tgt[c] = tgt[c] + v if c in tgt else v
        return BandMatrix(self.basis, out, min(self.valid, other.valid),
                          max(self.up, other.up))

    def scale(self, s):
        return BandMatrix(self.basis, {d: {c: v * s for c, v in col.items()}
                                       for d, col in self.diags.items()},
                          self.valid, self.up)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        M = self.M
        out = {}
        for db, colb in other.diags.items():
            for c, vb in colb.items():
                k = c + db
                for da, cola in self.diags.items():
                    va = cola.get(k)
                    if va is None or not 0 <= k + da < M:
                        continue
                    tgt = out.setdefault(da + db, {})
                    prod = va * vb
                    tgt[c] = tgt[c] + prod if c in tgt else prod
        valid = min(other.valid, self.valid - other.up)
        return BandMatrix(self.basis, out, valid, self.up + other.up)

    def equal_on_window(self, other, window=None):
        """First ``(row, col, t-order)`` where entries differ within the window."""
        V = min(self.valid, other.valid) if window is None else window
        for d in sorted(set(self.diags) | set(other.diags)):
            for c in range(V):
                r = c + d
                if not 0 <= r < self.M:
                    continue
                a, b = self.entry(r, c), other.entry(r, c)
                if a != b:
                    n = next(k for k in range(len(a.coeffs)) if a[k] != b[k])
                    return r, c, n
        return None


def shift_operators(ctx: QContext, M: int, N: int):
    return WeightedBasis(ctx, M, N).shift_operators()


def operator_of_word(basis: WeightedBasis, word) -> BandMatrix:
    zhat, zstar = basis.shift_operators()
    out = basis.identity()
    for letter in word:
        out = out @ (zhat if letter == Z else zstar)
    return out


def operator_of(basis: WeightedBasis, f) -> BandMatrix:
    """``sum a_ij Z^i Z*^j`` for normal input, ``sum a_ij Z*^i Z^j`` for anti-normal."""
    anti = isinstance(f, AntiNormalPolynomial)
    first, second = (ZSTAR, Z) if anti else (Z, ZSTAR)
    if f.degree_z + f.degree_zstar >= basis.M:
        raise ValueError(f"Fock dimension {basis.M} too small for degree {f.degree}")
    out = basis.zero()
    for (i, j), c in f.items():
        op = basis.power(first, i) @ basis.power(second, j)
        out = out + op.scale(c)
    return out


def covariant_symbol(A: BandMatrix, check=True) -> NormalPolynomial:
    """Recover ``c_ij`` with ``A = sum c_ij Z^i Z*^j`` on the exact window.

    On diagonal ``d = i - j`` column ``m`` holds ``sum_j c_{j+d, j} mu_j(m)``,
    a lower-triangular system in ``m`` solved by forward substitution.
    """
    basis = A.basis
    V = A.valid
    if V < 1:
        raise InconsistentBand("no exact columns in the window")
    mu = basis.mu()
    inv_diag = [series_inv(mu[m][m]) for m in range(V)]
    coeffs = {}
    for d, col in A.diags.items():
        known = []
        for m in range(max(0, -d), V):
            if m + d >= basis.M:
                break
            acc = col.get(m, TSeries.zero(basis.N))
            for jj, c in known:
                acc = acc - c * mu[jj][m]
            c_m = acc * inv_diag[m]
            if c_m:
                known.append((m, c_m))
        for jj, c in known:
            if jj == V - 1:
                raise InconsistentBand(
                    f"coefficient at z*-degree {jj} on diagonal {d} touches the "
                    f"window edge; operator not polynomial within {V} columns")
            coeffs[(jj + d, jj)] = c
    result = NormalPolynomial(coeffs)
    if check:
        rebuilt = operator_of(basis, result)
        bad = A.equal_on_window(rebuilt, min(V, rebuilt.valid))
        if bad is not None:
            raise InconsistentBand(f"rebuilt operator differs at entry {bad}")
    return result


def default_dim(deg_total: int, N: int) -> int:
    return deg_total + 2 * N + 8


def _stable(compute, M, N):
    """Run ``compute(M)`` and ``compute(M + 8)`` and demand identical results."""
    a = compute(M)
    b = compute(M + 8)
    if a != b:
        raise TruncationError(f"result changed when enlarging Fock dimension {M} -> {M + 8}")
    return a


def oracle_star(ctx: QContext, f: NormalPolynomial, g: NormalPolynomial, N: int,
                M=None) -> NormalPolynomial:
    """Covariant symbol of ``f^ g^``: the star product read off the operators."""
    if M is None:
        M = default_dim(f.degree + g.degree, N)

    def compute(dim):
        basis = WeightedBasis.cached(ctx, dim, N)
        return covariant_symbol(operator_of(basis, f) @ operator_of(basis, g))

    return _stable(compute, M, N)


def berezin_transform(ctx: QContext, f0: AntiNormalPolynomial, N: int,
                      M=None) -> NormalPolynomial:
    """Covariant symbol of the operator whose contravariant symbol is ``f0``."""
    if M is None:
        M = default_dim(f0.degree, N)

    def compute(dim):
        return covariant_symbol(operator_of(WeightedBasis.cached(ctx, dim, N), f0))

    return _stable(compute, M, N)


@dataclass
class Relation3Report:
    ok: bool
    window: int
    mismatch: tuple = None

    def __bool__(self):
        return self.ok


def verify_relation3(ctx: QContext, M: int, N: int) -> Relation3Report:
    """Check ``Z*Z = q^2 ZZ* + 1 - q^2 + t(1-q^2)/(1-t) (1 - ZZ*)(1 - Z*Z)``."""
    if M < 3:
        raise ValueError("need M >= 3")
    basis = WeightedBasis(ctx, M, N)
    zhat, zstar = basis.shift_operators()
    one = basis.identity()
    q2 = ctx.pow(2)
    lhs = zstar @ zhat
    zz = zhat @ zstar
    s = TSeries.monomial(1, N) * series_inv(TSeries([1, -1], N)) * (1 - q2)
    rhs = zz.scale(q2) + one.scale(1 - q2) + ((one - zz) @ (one - lhs)).scale(s)
    window = min(lhs.valid, rhs.valid)
    bad = lhs.equal_on_window(rhs, window)
    return Relation3Report(bad is None, window, bad)
