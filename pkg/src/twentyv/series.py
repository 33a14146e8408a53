"""Truncated bivariate power series and a Laurent constant-term engine.

Coefficients may be ``int``, ``Fraction``, :class:`QuadRat` or
:class:`UniPoly` (for generators carrying a formal variable).  Everything is
truncated at explicit orders and reading past them raises
:class:`TruncationError` instead of returning zero.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import product as iproduct

from .exactcore import UniPoly, as_int_if_integral, join_rings, ring_of, to_str

__all__ = [
    "TruncationError", "SeriesError", "WindowOverflowError",
    "BiPoly", "RatFun2", "BiSeries", "U", "V",
    "expand", "coeff", "convolve", "substitute_u",
    "useries_mul", "useries_inv", "useries_pow", "useries_from_ratio",
    "sqrt_series", "odd_v_half", "stretch_v", "LaurentMulti", "constant_term",
]


class TruncationError(IndexError):
    """A coefficient beyond the retained orders was requested or needed."""


class SeriesError(ValueError):
    """A series operation's algebraic precondition does not hold."""


class WindowOverflowError(ArithmeticError):
    """A truncated Laurent factor would be read outside its window."""


def _ring(values) -> str:
    r = "Int"
    for c in values:
        rc = ring_of(c)
        if rc == "UniPoly":
            return "UniPoly"
        r = join_rings(r, rc)
    return r


def _norm(c):
    """Canonical scalar form: integral Fractions become ints."""
    if isinstance(c, Fraction):
        return as_int_if_integral(c)
    return c


def _div(a, b):
    if b == 1:
        return a
    if isinstance(a, UniPoly):
        return a / b
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    return _norm(a / b)


# ---------------------------------------------------------------------------
# Finite bivariate polynomials and rational functions


class BiPoly:
    """Sparse polynomial in u, v: a dict {(i, j): coefficient}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        for k, c in (terms or {}).items():
            if c != 0:
                t[k] = _norm(c)
        self.terms = t

    @classmethod
    def const(cls, c) -> BiPoly:
        return cls({(0, 0): c})

    @staticmethod
    def _lift(x):
        if isinstance(x, BiPoly):
            return x
        if isinstance(x, (int, Fraction, UniPoly)) and not isinstance(x, bool):
            return BiPoly.const(x)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        t = dict(self.terms)
        for k, c in o.terms.items():
            t[k] = t.get(k, 0) + c
        return BiPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RatFun2):
            return NotImplemented
        o = self._lift(other)
        if o is NotImplemented:
            return o
        t: dict = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in o.terms.items():
                t[(i + k, j + l)] = t.get((i + k, j + l), 0) + a * b
        return BiPoly(t)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = BiPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __truediv__(self, other):
        return RatFun2(self, 1) / other

    def __rtruediv__(self, other):
        return RatFun2(BiPoly._lift(other), self)

    def at(self, i: int, j: int):
        return self.terms.get((i, j), 0)

    def degrees(self) -> tuple[int, int]:
        if not self.terms:
            return (0, 0)
        return (max(i for i, _ in self.terms), max(j for _, j in self.terms))

    def map_coeffs(self, f) -> BiPoly:
        return BiPoly({k: f(c) for k, c in self.terms.items()})

    def __eq__(self, other):
        o = self._lift(other)
        return o is not NotImplemented and self.terms == o.terms

    def __repr__(self):
        return f"BiPoly({self.terms!r})"


U = BiPoly({(1, 0): 1})
V = BiPoly({(0, 1): 1})


class RatFun2:
    """num/den with den(0,0) != 0, both finite bivariate polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        object.__setattr__(self, "num", BiPoly._lift(num))
        object.__setattr__(self, "den", BiPoly._lift(den))

    @staticmethod
    def _lift(x):
        if isinstance(x, RatFun2):
            return x
        p = BiPoly._lift(x)
        if p is NotImplemented:
            return p
        return RatFun2(p, 1)

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFun2(self.num + o.num, self.den)
        return RatFun2(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun2(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RatFun2(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RatFun2(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return RatFun2(self.den ** (-e), self.num ** (-e))
        return RatFun2(self.num ** e, self.den ** e)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun2 is immutable")

    def __repr__(self):
        return f"RatFun2({self.num!r}, {self.den!r})"


# ---------------------------------------------------------------------------
# Truncated bivariate series


class BiSeries:
    """Coefficients c[i][j] for 0 <= i <= I, 0 <= j <= J."""

    __slots__ = ("I", "J", "grid", "ring")

    def __init__(self, grid, ring: str | None = None):
        rows = [tuple(_norm(c) for c in row) for row in grid]
        if not rows or not rows[0]:
            raise SeriesError("a series needs at least the constant coefficient")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise SeriesError("ragged coefficient grid")
        object.__setattr__(self, "grid", tuple(rows))
        object.__setattr__(self, "I", len(rows) - 1)
        object.__setattr__(self, "J", width - 1)
        object.__setattr__(self, "ring", ring or _ring(c for r in rows for c in r))

    def __setattr__(self, name, value):
        raise AttributeError("BiSeries is immutable")

    @classmethod
    def zeros(cls, I: int, J: int) -> BiSeries:
        return cls([[0] * (J + 1) for _ in range(I + 1)])

    @property
    def orders(self) -> tuple[int, int]:
        return (self.I, self.J)

    def coeff(self, i: int, j: int):
        if i < 0 or j < 0:
            return 0
        if i > self.I or j > self.J:
            raise TruncationError(f"u^{i} v^{j} lies beyond orders ({self.I}, {self.J})")
        return self.grid[i][j]

    def column(self, j: int) -> list:
        return [self.coeff(i, j) for i in range(self.I + 1)]

    def truncate(self, I: int, J: int) -> BiSeries:
        if I > self.I or J > self.J:
            raise TruncationError(f"cannot extend orders ({self.I}, {self.J}) to ({I}, {J})")
        return BiSeries([row[: J + 1] for row in self.grid[: I + 1]])

    def _binary(self, other, op) -> BiSeries:
        if not isinstance(other, BiSeries):
            return NotImplemented
        I, J = min(self.I, other.I), min(self.J, other.J)
        return BiSeries([[op(self.grid[i][j], other.grid[i][j]) for j in range(J + 1)]
                         for i in range(I + 1)])

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __neg__(self):
        return self.map_coeffs(lambda c: -c)

    def __mul__(self, other):
        if not isinstance(other, BiSeries):
            return self.map_coeffs(lambda c: c * other)
        I, J = min(self.I, other.I), min(self.J, other.J)
        out = [[0] * (J + 1) for _ in range(I + 1)]
        for i, j in iproduct(range(I + 1), range(J + 1)):
            a = self.grid[i][j]
            if a == 0:
                continue
            for k in range(I + 1 - i):
                row = other.grid[k]
                orow = out[i + k]
                for l in range(J + 1 - j):
                    b = row[l]
                    if b != 0:
                        orow[j + l] += a * b
        return BiSeries(out)

    __rmul__ = __mul__

    def map_coeffs(self, f) -> BiSeries:
        return BiSeries([[f(c) for c in row] for row in self.grid])

    def __eq__(self, other):
        return isinstance(other, BiSeries) and self.grid == other.grid

    def __hash__(self):
        return hash(self.grid)

    def __repr__(self):
        return f"BiSeries(orders=({self.I}, {self.J}), ring={self.ring})"

    def to_json(self) -> str:
        """Debug dump: grid of decimal strings (polynomials as coefficient lists)."""
        def enc(c):
            return c.to_strings() if isinstance(c, UniPoly) else to_str(c)
        return json.dumps({"orders": [self.I, self.J], "ring": self.ring,
                           "grid": [[enc(c) for c in row] for row in self.grid]})


def expand(f: RatFun2, orders: tuple[int, int]) -> BiSeries:
    """Power-series expansion of ``f`` at the origin up to ``orders``."""
    I, J = orders
    if I < 0 or J < 0:
        raise SeriesError("orders must be non-negative")
    f = RatFun2._lift(f)
    d0 = f.den.at(0, 0)
    if d0 == 0:
        raise SeriesError("denominator vanishes at the origin")
    den = [(k, c) for k, c in f.den.terms.items() if k != (0, 0) and k[0] <= I and k[1] <= J]
    s = [[0] * (J + 1) for _ in range(I + 1)]
    for i in range(I + 1):
        for j in range(J + 1):
            acc = f.num.at(i, j)
            for (a, b), c in den:
                if a <= i and b <= j:
                    x = s[i - a][j - b]
                    if x != 0:
                        acc = acc - c * x
            s[i][j] = _div(acc, d0)
    return BiSeries(s)


def coeff(s: BiSeries, i: int, j: int):
    return s.coeff(i, j)


def convolve(fA: BiSeries, fB: BiSeries, orders: tuple[int, int] | None = None) -> BiSeries:
    """Generating series of the matrix product AB.

    A_{i,t} = fA[u^i v^t] and B_{t,j} = fB[u^t v^j].  The inner sum over t
    is finite only if A is lower triangular; that is checked on the retained
    window, and the inner order min(fA.J, fB.I) must reach the output u-order.
    """
    I = fA.I if orders is None else orders[0]
    J = fB.J if orders is None else orders[1]
    if I > fA.I or J > fB.J:
        raise TruncationError("requested orders exceed the factors' outer orders")
    T = min(fA.J, fB.I)
    if T < I:
        raise TruncationError(
            f"inner order {T} is below the output u-order {I}; the product is not exact")
    for i in range(I + 1):
        for t in range(i + 1, fA.J + 1):
            if fA.grid[i][t] != 0:
                raise TruncationError(
                    "left factor is not lower triangular; the inner sum is unbounded")
    out = [[0] * (J + 1) for _ in range(I + 1)]
    for i in range(I + 1):
        arow = fA.grid[i]
        orow = out[i]
        for t in range(i + 1):
            a = arow[t]
            if a == 0:
                continue
            brow = fB.grid[t]
            for j in range(J + 1):
                b = brow[j]
                if b != 0:
                    orow[j] += a * b
    return BiSeries(out)


# ---------------------------------------------------------------------------
# Univariate truncated series (plain coefficient lists)


def useries_mul(a, b, N: int) -> list:
    out = [0] * (N + 1)
    for i, x in enumerate(a[: N + 1]):
        if x == 0:
            continue
        for j, y in enumerate(b[: N + 1 - i]):
            if y != 0:
                out[i + j] += x * y
    return [_norm(c) for c in out]


def _pad(a, N):
    a = list(a[: N + 1])
    return a + [0] * (N + 1 - len(a))


def useries_inv(a, N: int) -> list:
    a = _pad(a, N)
    if a[0] == 0:
        raise SeriesError("series with zero constant term has no reciprocal")
    out = [0] * (N + 1)
    out[0] = _div(1, a[0]) if not isinstance(a[0], UniPoly) else None
    if out[0] is None:
        raise SeriesError("reciprocal needs a scalar constant term")
    for k in range(1, N + 1):
        acc = 0
        for i in range(1, k + 1):
            if a[i] != 0 and out[k - i] != 0:
                acc = acc + a[i] * out[k - i]
        out[k] = _norm(-acc * out[0]) if out[0] != 1 else _norm(-acc)
    return out


def useries_pow(a, e: int, N: int) -> list:
    if e < 0:
        return useries_pow(useries_inv(a, N), -e, N)
    out = [1] + [0] * N
    base = _pad(a, N)
    while e:
        if e & 1:
            out = useries_mul(out, base, N)
        base = useries_mul(base, base, N)
        e >>= 1
    return out


def useries_from_ratio(p, q, N: int) -> list:
    """Series of p(u)/q(u) for coefficient sequences p, q with q[0] != 0."""
    return useries_mul(_pad(p, N), useries_inv(q, N), N)


def sqrt_series(p, N: int) -> list:
    """The square root with constant term 1, by coefficient recurrence."""
    p = _pad(p, N)
    if p[0] != 1:
        raise SeriesError("square root needs constant term 1")
    s = [1] + [0] * N
    for k in range(1, N + 1):
        acc = p[k]
        for i in range(1, k):
            acc = acc - s[i] * s[k - i]
        s[k] = _div(acc, 2)
    return s


def odd_v_half(f) -> list:
    """g with g[j] = f[2j+1]: (f(sqrt v) - f(-sqrt v)) / (2 sqrt v)."""
    return list(f[1::2])


def stretch_v(f) -> list:
    """f(v) -> f(v^2)."""
    out = []
    for c in f:
        out.extend([c, 0])
    return out[:-1] if out else out


def substitute_u(f, m, orders: tuple[int, int]) -> BiSeries:
    """Compose f(m(u), v) for a map m with m(0) = 0.

    ``f`` is a RatFun2 or BiSeries; ``m`` is a coefficient list (truncated
    series in u) or a pair ``(p, q)`` of coefficient lists meaning p/q.
    """
    I, J = orders
    if isinstance(m, tuple) and len(m) == 2:
        m = useries_from_ratio(m[0], m[1], I)
    m = _pad(m, I)
    if m[0] != 0:
        raise SeriesError("substitution map must fix the origin")
    if isinstance(f, BiSeries):
        if f.I < I or f.J < J:
            raise TruncationError("source series is truncated below the requested orders")
        src = f
    else:
        src = expand(f, (I, J))
    out = [[0] * (J + 1) for _ in range(I + 1)]
    mpow = [1] + [0] * I
    for k in range(I + 1):
        for j in range(J + 1):
            c = src.grid[k][j]
            if c == 0:
                continue
            for i in range(k, I + 1):
                x = mpow[i]
                if x != 0:
                    out[i][j] += c * x
        mpow = useries_mul(mpow, m, I)
    return BiSeries(out)


# ---------------------------------------------------------------------------
# Multivariate Laurent polynomials and constant terms


class LaurentMulti:
    """Sparse Laurent polynomial in x_1..x_n with per-variable exponent windows.

    ``terms`` maps exponent tuples to coefficients.  A factor may be marked
    ``truncated`` with per-variable maximal degrees, meaning it is the
    initial part of an infinite power series: any use that would need a
    coefficient beyond those degrees raises :class:`WindowOverflowError`.
    """

    __slots__ = ("n", "terms", "lo", "hi", "truncated")

    def __init__(self, n: int, terms: dict, truncated: bool = False):
        self.n = n
        self.terms = {tuple(e): c for e, c in terms.items() if c != 0}
        if any(len(e) != n for e in self.terms):
            raise ValueError("exponent tuple of wrong length")
        if self.terms:
            self.lo = tuple(min(e[i] for e in self.terms) for i in range(n))
            self.hi = tuple(max(e[i] for e in self.terms) for i in range(n))
        else:
            self.lo = self.hi = (0,) * n
        self.truncated = truncated

    @classmethod
    def monomial(cls, n: int, exps, c=1) -> LaurentMulti:
        return cls(n, {tuple(exps): c})

    @classmethod
    def variable(cls, n: int, i: int) -> LaurentMulti:
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def const(cls, n: int, c) -> LaurentMulti:
        return cls(n, {(0,) * n: c})

    @classmethod
    def geometric_power(cls, n: int, i: int, power: int, degree: int) -> LaurentMulti:
        """(1 - x_i)^(-power) truncated at x_i^degree."""
        terms = {}
        c = 1
        for d in range(degree + 1):
            e = [0] * n
            e[i] = d
            terms[tuple(e)] = c
            c = c * (power + d) // (d + 1)
        return cls(n, terms, truncated=True)

    def _combine(self, other, sign):
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + sign * c
        return LaurentMulti(self.n, t)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __mul__(self, other):
        if not isinstance(other, LaurentMulti):
            return LaurentMulti(self.n, {e: c * other for e, c in self.terms.items()})
        if self.truncated or other.truncated:
            raise WindowOverflowError("truncated factors may only enter through constant_term")
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return LaurentMulti(self.n, t)

    __rmul__ = __mul__

    def constant(self):
        return self.terms.get((0,) * self.n, 0)


def constant_term(factors: list[LaurentMulti]):
    """Exact constant term of a product of Laurent factors.

    Partial products are pruned whenever no choice of terms from the
    remaining factors can bring some exponent back to zero.  Truncated
    factors must come after every exact factor that still varies; reading a
    truncated factor past its window raises :class:`WindowOverflowError`.
    """
    if not factors:
        return 1
    n = factors[0].n
    if any(f.n != n for f in factors):
        raise ValueError("factors over different variable counts")
    m = len(factors)
    # suffix bounds on the exponents still to come, per variable
    slo = [[0] * n for _ in range(m + 1)]
    shi = [[0] * n for _ in range(m + 1)]
    open_ = [[False] * n for _ in range(m + 1)]
    for k in range(m - 1, -1, -1):
        f = factors[k]
        for i in range(n):
            series_here = f.truncated and f.hi[i] > 0
            if series_here and open_[k + 1][i]:
                raise ValueError(f"two truncated factors in variable {i + 1}")
            slo[k][i] = slo[k + 1][i] + f.lo[i]
            shi[k][i] = shi[k + 1][i] + f.hi[i]
            open_[k][i] = open_[k + 1][i] or series_here
    acc = {(0,) * n: 1}
    for k, f in enumerate(factors):
        lo, hi, unb = slo[k + 1], shi[k + 1], open_[k + 1]
        if f.truncated:
            for e1 in acc:
                for i in range(n):
                    if f.hi[i] > 0 and -e1[i] - lo[i] > f.hi[i]:
                        raise WindowOverflowError(
                            f"variable {i + 1} needs degree {-e1[i] - lo[i]} "
                            f"beyond window {f.hi[i]}")
        nxt: dict = {}
        for e1, c1 in acc.items():
            for e2, c2 in f.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if any(e[i] + lo[i] > 0 or (not unb[i] and e[i] + hi[i] < 0) for i in range(n)):
                    continue
                nxt[e] = nxt.get(e, 0) + c1 * c2
        acc = {e: c for e, c in nxt.items() if c != 0}
    return _norm(acc.get((0,) * n, 0))
