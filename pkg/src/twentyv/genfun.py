"""Catalog of generating functions, explicit matrix-entry rules and vertex weights.

Every generator is built as an exact truncated :class:`BiSeries`.  Refined
generators carry their formal variable (tau or t) only in the v^(n-1)
column, as :class:`UniPoly` coefficients; all other columns are constants.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exactcore import QuadRat, SQRT2, UniPoly, as_int_if_integral
from .series import (
    BiSeries, RatFun2, SeriesError, TruncationError, U, V, expand,
    sqrt_series, useries_inv, useries_mul, useries_pow,
)

__all__ = [
    "GenSpec", "NegativePowerError", "CATALOG", "make", "rational_form",
    "alpha_plus", "alpha_minus", "entry_binom", "entry_theta", "binom",
    "WeightPoint", "WeightVector", "combinatorial_point", "weights_20v",
    "weights_lastcol", "tau_of_w", "tau_at_minus_one_exact", "g6v_column_scale",
]

TAU = UniPoly.x()


class NegativePowerError(SeriesError):
    """A refined column would need negative powers of its formal variable."""


@dataclass(frozen=True)
class GenSpec:
    """A catalog entry plus its parameters.

    ``gamma`` is a rational sample or ``None``; for the gamma family ``None``
    means "keep gamma as the formal variable".
    """

    name: str
    n: int | None = None
    gamma: int | Fraction | None = None

    def __post_init__(self):
        if self.name not in CATALOG:
            raise ValueError(f"unknown generator {self.name!r}")
        needs_n, has_gamma, _ = CATALOG[self.name]
        if needs_n and (self.n is None or self.n < 1):
            raise ValueError(f"{self.name} needs a size n >= 1")
        if not has_gamma and self.gamma is not None:
            raise ValueError(f"{self.name} takes no gamma")
        if has_gamma and self.gamma is None and needs_n:
            raise ValueError(f"{self.name} needs a rational gamma sample")

    @property
    def variable(self) -> str:
        _, has_gamma, var = CATALOG[self.name]
        if has_gamma and self.gamma is None:
            if var == "t":
                raise ValueError(f"{self.name} with formal gamma and formal t is not supported")
            return "gamma"
        return var


# name -> (needs n, accepts gamma, formal variable)
CATALOG = {
    "identity": (False, False, "none"),
    "sigma": (False, False, "none"),
    "g20v": (False, False, "none"),
    "f_dt": (False, False, "none"),
    "f_l": (False, False, "none"),
    "f_lambda": (False, False, "none"),
    "g20v_ref": (True, False, "tau"),
    "g6v_ref": (True, False, "tau"),
    "f_dt_ref": (True, False, "t"),
    "f_dt_gamma": (False, True, "none"),
    "f_l_gamma": (False, True, "none"),
    "f_dt_gamma_ref": (True, True, "t"),
    "bar_f_gamma_ref": (True, True, "t"),
}


def _gamma(g):
    return UniPoly.x() if g is None else Fraction(g)


def rational_form(spec: GenSpec) -> RatFun2:
    """Closed form of the unrefined part of a generator."""
    name = spec.name
    if name == "identity":
        return 1 / (1 - U * V)
    if name == "sigma":
        return 1 / (1 - U - V - U * V)
    if name in ("g20v", "g20v_ref", "g6v_ref"):
        return (1 + U * U) * (1 + 2 * U - U * U) / ((1 - U * U * V) * ((1 - U) ** 2 - V * (1 + U) ** 2))
    if name in ("f_dt", "f_dt_ref"):
        return (1 + U) / (1 - V - 4 * U * V - U * U * V + U * U * V * V)
    if name == "f_l":
        return (1 + 2 * U - U * U) / (1 - U - U * V - U * U * V)
    if name == "f_lambda":
        return (1 - U) / (1 - U - V * U)
    g = _gamma(spec.gamma)
    if name in ("f_dt_gamma", "f_dt_gamma_ref"):
        return (1 + U) / (1 - V - 2 * (1 + g) * U * V - U * U * V + g * g * U * U * V * V)
    if name == "f_l_gamma":
        return (1 + 2 * g * U - g * U * U) / (1 - U - V * U * (1 + g * U))
    if name == "bar_f_gamma_ref":
        return ((1 + g * U * U) * (1 + 2 * g * U - g * U * U)
                / ((1 - g * g * U * U * V) * ((1 - U) ** 2 - V * (1 + g * U) ** 2)))
    raise ValueError(name)


# ---------------------------------------------------------------------------
# alpha_+ and alpha_-


def _disc(gamma, N):
    g = _gamma(gamma)
    return sqrt_series([1, 2 * (1 + 2 * g), 1], N)


def _half(x):
    return x / 2 if isinstance(x, UniPoly) else as_int_if_integral(Fraction(x) / 2)


def alpha_plus(N: int, gamma=1) -> list:
    """Series of (1 + u + sqrt(1 + 2(1+2g)u + u^2)) / 2 to order N."""
    s = _disc(gamma, N)
    base = [1, 1] + [0] * (N - 1)
    return [_half(a + b) for a, b in zip(base[: N + 1], s)]


def alpha_minus(N: int, gamma=1) -> list:
    s = _disc(gamma, N)
    base = [1, 1] + [0] * (N - 1)
    return [_half(a - b) for a, b in zip(base[: N + 1], s)]


# ---------------------------------------------------------------------------
# Refined columns


def _ratio_power(num, den, e, N):
    """((num)/(den))^e as a series, num and den coefficient lists."""
    return useries_pow(useries_mul(num, useries_inv(den, N), N), e, N)


def _refined_20v_column(n: int, I: int, six_vertex: bool) -> list:
    if I > n - 1:
        raise NegativePowerError(
            f"the u^{I} coefficient of the refined column would carry tau^{n - 1 - I}")
    A = _ratio_power([1, 1], [1, -1], 2 * n, I)
    # tau^n/((tau-u)(1-tau u)) at u^i is the sum of tau^(n-1+i-2a), a = 0..i
    phi = []
    for i in range(I + 1):
        cs = [0] * (n + i)
        for a in range(i + 1):
            e = n - 1 + i - 2 * a
            if e < 0:
                raise NegativePowerError(f"negative tau power at u^{i}")
            cs[e] += 1
        phi.append(UniPoly(cs))
    phi = useries_mul(phi, [1, -2, 1], I)
    if six_vertex:
        # column times (1+tau)^(n-1): 2^(n-1) phi - (1+tau)^(n-1)
        scale = (1 + TAU) ** (n - 1)
        bracket = [2 ** (n - 1) * p for p in phi]
        bracket[0] = bracket[0] - scale
    else:
        bracket = list(phi)
        bracket[0] = bracket[0] - 1
    return useries_mul(A, bracket, I)


def g6v_column_scale(n: int) -> UniPoly:
    """The factor by which make(g6v_ref) scales the v^(n-1) column: (1+tau)^(n-1)."""
    return (1 + TAU) ** (n - 1)


def _refined_dt_column(n: int, I: int, gamma) -> list:
    N = I
    ap = alpha_plus(N, gamma)
    inv_ap = useries_inv(ap, N)
    disc_inv = useries_inv(_disc(gamma, N), N)
    pref = useries_mul(useries_pow(ap, 2 * n, N), disc_inv, N)
    x = useries_mul([0, 1], inv_ap, N)  # u / alpha_+
    t = UniPoly.x()
    # (t-1) u/(alpha_+ - t u) = (t-1) * sum_m t^m x^(m+1)
    tail = [UniPoly(())] * (N + 1)
    xp = list(x)
    for m in range(N):
        tm = (t - 1) * t ** m
        tail = [a + tm * b for a, b in zip(tail, xp)]
        xp = useries_mul(xp, x, N)
    return useries_mul(pref, tail, N)


def _refined_bar_column(n: int, I: int, gamma) -> list:
    g = Fraction(gamma)
    pref = _ratio_power([1, g], [1, -1], 2 * n, I)
    t = UniPoly.x()
    tail = [UniPoly(())] + [(t - 1) * t ** (m - 1) for m in range(1, I + 1)]
    return useries_mul(pref, tail, I)


def _with_column(base: BiSeries, j: int, extra: list, replace: bool = False) -> BiSeries:
    grid = [list(row) for row in base.grid]
    for i in range(base.I + 1):
        c = extra[i]
        grid[i][j] = c if replace else grid[i][j] + c
        if not isinstance(grid[i][j], UniPoly):
            grid[i][j] = UniPoly((grid[i][j],))
    return BiSeries(grid)


def make(spec: GenSpec, orders: tuple[int, int]) -> BiSeries:
    """Exact truncated series of a catalog entry."""
    I, J = orders
    n = spec.n
    if n is not None and (I < n - 1 or J < n - 1):
        raise TruncationError(f"{spec.name} at n={n} needs orders >= ({n - 1}, {n - 1})")
    base = expand(rational_form(spec), orders)
    name = spec.name
    if name in ("g20v_ref", "g6v_ref"):
        col = _refined_20v_column(n, I, six_vertex=(name == "g6v_ref"))
        if name == "g6v_ref":
            scale = g6v_column_scale(n)
            col = [scale * b + c for b, c in zip(base.column(n - 1), col)]
            out = _with_column(base, n - 1, col, replace=True)
        else:
            out = _with_column(base, n - 1, col)
        _check_refined(out, n, spec)
        return out
    if name in ("f_dt_ref", "f_dt_gamma_ref"):
        gamma = 1 if name == "f_dt_ref" else spec.gamma
        out = _with_column(base, n - 1, _refined_dt_column(n, I, gamma))
        _check_refined(out, n, spec)
        return out
    if name == "bar_f_gamma_ref":
        out = _with_column(base, n - 1, _refined_bar_column(n, I, spec.gamma))
        _check_refined(out, n, spec)
        return out
    return base


def _check_refined(s: BiSeries, n: int, spec: GenSpec) -> None:
    for i in range(s.I + 1):
        for j in range(s.J + 1):
            c = s.grid[i][j]
            if j != n - 1 and isinstance(c, UniPoly) and not c.is_constant():
                raise SeriesError(f"{spec.name}: formal variable leaked into column {j}")
    if spec.name == "g20v_ref":
        for i in range(s.I + 1):
            c = s.grid[i][n - 1]
            # lowest surviving power is at least n-1-i, degree at most n-1+i
            low = next((k for k, x in enumerate(c.coeffs) if x != 0), None)
            if c.degree > n - 1 + i or (low is not None and i > 0 and low < n - 1 - i):
                raise NegativePowerError(f"u^{i} entry {c} outside tau-degrees "
                                         f"[{n - 1 - i}, {n - 1 + i}]")


# ---------------------------------------------------------------------------
# Explicit entry formulas


def binom(m: int, p: int) -> int:
    """C(m, p) by multiplicative recurrence, with C(m, p) = 0 for -1 <= m < p."""
    if p < 0:
        return 0
    if -1 <= m < p:
        return 0
    if m < -1:
        raise ValueError("binomial outside the supported range")
    out = 1
    for k in range(p):
        out = out * (m - k) // (k + 1)
    return out


def entry_binom(i: int, j: int) -> int:
    return 2 ** i * binom(i + 2 * j + 1, 2 * j + 1) - binom(i - 1, 2 * j + 1)


def _pow_sqrt2(x: int) -> QuadRat:
    """2^(x/2) in Q(sqrt2) for integer x."""
    base = Fraction(2) ** (x // 2)
    return QuadRat(base) if x % 2 == 0 else QuadRat(0, base)


def _theta(m: int, x: int) -> QuadRat:
    prod = 1
    for k in range(1, m + 1):
        prod *= x + k
    return _pow_sqrt2(x) * Fraction(prod, math.factorial(m))


def entry_theta(i: int, j: int) -> QuadRat:
    return _theta(2 * j + 1, i) + _theta(2 * j + 1, -i)


# ---------------------------------------------------------------------------
# Vertex weights (complex doubles; numeric checks only)


Q8 = cmath.exp(1j * cmath.pi / 8)


@dataclass(frozen=True)
class WeightPoint:
    """Spectral data for the vertex weights.

    ``alpha`` is the overall scale of (z, t, w); square roots of products
    are taken as alpha*sqrt(x/alpha)*sqrt(y/alpha) with principal roots.
    """

    q: complex
    z: complex
    t: complex
    w: complex
    alpha: complex = 1
    p: complex | None = None


@dataclass(frozen=True)
class WeightVector:
    omega: tuple = field(default_factory=tuple)

    def __getitem__(self, k):
        return self.omega[k]

    def max_deviation_from(self, target: complex = 1) -> float:
        return max(abs(x - target) for x in self.omega)


def combinatorial_point() -> WeightPoint:
    q = Q8
    a = 2 ** (-5 / 6) * q ** -4
    return WeightPoint(q=q, z=a * q ** 6, t=a, w=a * q ** -6, alpha=a)


def weights_20v(pt: WeightPoint) -> WeightVector:
    q, z, t, w, a = pt.q, pt.z, pt.t, pt.w, pt.alpha

    def sq(x, y):
        return a * cmath.sqrt(x / a) * cmath.sqrt(y / a)

    s = q ** 2 - q ** -2
    return WeightVector((
        (z - w) * (q * z - t / q) * (q * t - w / q),
        (z / q ** 2 - q ** 2 * w) * (q * z - t / q) * (t / q - q * w),
        (z / q ** 2 - q ** 2 * w) * (q * z - t / q) * s * sq(t, w),
        z * t * w * s ** 3 + (z - w) * (z / q - q * t) * (t / q - q * w),
        s * sq(z, w) * (q * z - t / q) * (q * t - w / q),
        (z / q ** 2 - q ** 2 * w) * s * sq(z, t) * (q * t - w / q),
        (z / q ** 2 - q ** 2 * w) * (z / q - q * t) * (q * t - w / q),
    ))


def weights_lastcol(w: complex, q: complex = Q8) -> tuple[WeightVector, complex]:
    """Last-column weights and tau as functions of w."""
    r2 = math.sqrt(2)
    half = (1 - w) / 2
    b2 = half * cmath.sqrt(-w)
    b0 = (1 - w) * (q ** 2 - q ** -2 * w) / (2 * r2)
    b1 = (1 - w) * (q ** -2 - q ** 2 * w) / (2 * r2)
    vec = WeightVector((b0, b1, b2, half ** 2, b2, half ** 2, half ** 2))
    return vec, tau_of_w(w, q)


def tau_of_w(w: complex, q: complex = Q8) -> complex:
    return (q ** -2 - q ** 2 * w) / (q ** 2 - q ** -2 * w)


def tau_at_minus_one_exact() -> QuadRat:
    """tau(w=-1) = (q^-2 + q^2)/(q^2 + q^-2) with q^2 + q^-2 = 2cos(pi/4) = sqrt2."""
    s = SQRT2  # q^2 + q^-2
    return s / s
