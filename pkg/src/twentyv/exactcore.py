"""Exact scalar and polynomial arithmetic.

Integers are Python ``int`` and rationals are ``fractions.Fraction``; both are
already arbitrary precision and canonical.  This module adds the quadratic
field Q(sqrt2) (:class:`QuadRat`), dense univariate polynomials
(:class:`UniPoly`), ring tags used to keep determinant kernels monomorphic,
and the decimal-string serialization used in every report.
"""

from __future__ import annotations

import re
from fractions import Fraction

__all__ = [
    "RingError", "InexactDivision", "QuadRat", "UniPoly", "SQRT2",
    "ring_of", "join_rings", "rat_str", "parse_rat", "to_str", "parse_scalar",
    "as_int_if_integral", "lagrange_interpolate",
]

RING_ORDER = {"Int": 0, "Rat": 1, "QuadRat": 2}
DEG_ZERO = -1  # degree of the zero polynomial


class RingError(TypeError):
    """Operands live in rings that may not be mixed."""


class InexactDivision(ArithmeticError):
    """A division that the caller asserted exact left a remainder."""


def ring_of(x) -> str:
    if isinstance(x, bool):
        raise RingError("bool is not a ring element")
    if isinstance(x, int):
        return "Int"
    if isinstance(x, Fraction):
        return "Rat"
    if isinstance(x, QuadRat):
        return "QuadRat"
    if isinstance(x, UniPoly):
        return "UniPoly"
    raise RingError(f"unsupported scalar type {type(x).__name__}")


def join_rings(a: str, b: str) -> str:
    """Smallest ring containing both; only Int -> Rat -> QuadRat coercions exist."""
    if a == b:
        return a
    if a in RING_ORDER and b in RING_ORDER:
        return a if RING_ORDER[a] >= RING_ORDER[b] else b
    raise RingError(f"cannot mix {a} and {b}")


def as_int_if_integral(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _exact_scalar_div(a, b):
    if b == 0:
        raise ZeroDivisionError("division by zero")
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    return a / b


# ---------------------------------------------------------------------------
# Q(sqrt2)


class QuadRat:
    """An element a + b*sqrt(2) of Q(sqrt2) with rational a, b."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        if isinstance(a, QuadRat) or isinstance(b, QuadRat):
            raise RingError("QuadRat components must be rational")
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("QuadRat is immutable")

    @staticmethod
    def _lift(x) -> QuadRat:
        if isinstance(x, QuadRat):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return QuadRat(x, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadRat(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadRat(-self.a, -self.b)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadRat(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadRat(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conj(self) -> QuadRat:
        return QuadRat(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 2 * self.b * self.b

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        nrm = o.norm()
        if nrm == 0:
            raise ZeroDivisionError("QuadRat division by zero")
        p = self * o.conj()
        return QuadRat(p.a / nrm, p.b / nrm)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("integer exponents only")
        if k < 0:
            return QuadRat(1) / (self ** (-k))
        out, base = QuadRat(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * 2 ** 0.5

    def is_rational(self) -> bool:
        return self.b == 0

    def __repr__(self):
        return f"QuadRat({self.a}, {self.b})"

    def __str__(self):
        return f"{rat_str(self.a)}+{rat_str(self.b)}*sqrt2"

    @classmethod
    def parse(cls, s: str) -> QuadRat:
        m = _QUAD_RE.match(s.strip())
        if not m:
            raise ValueError(f"not a QuadRat literal: {s!r}")
        return cls(parse_rat(m.group(1)), parse_rat(m.group(2)))


SQRT2 = QuadRat(0, 1)

_RAT = r"-?\d+(?:/\d+)?"
_QUAD_RE = re.compile(rf"^({_RAT})\+({_RAT})\*sqrt2$")
_RAT_RE = re.compile(rf"^{_RAT}$")


def rat_str(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s: str):
    s = s.strip()
    if not _RAT_RE.match(s):
        raise ValueError(f"not a rational literal: {s!r}")
    if "/" in s:
        num, den = s.split("/")
        if int(den) == 0:
            raise ZeroDivisionError("zero denominator")
        return as_int_if_integral(Fraction(int(num), int(den)))
    return int(s)


def to_str(x) -> str:
    """Decimal-string serialization of an Int, Rat or QuadRat."""
    if isinstance(x, QuadRat):
        return str(x)
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return rat_str(x)
    if isinstance(x, UniPoly):
        return ";".join(to_str(c) for c in x.coeffs)
    raise RingError(f"cannot serialize {type(x).__name__}")


def parse_scalar(s: str):
    if "sqrt2" in s:
        return QuadRat.parse(s)
    return parse_rat(s)


# ---------------------------------------------------------------------------
# Dense univariate polynomials


class UniPoly:
    """Dense univariate polynomial with ascending coefficients.

    The ring tag is the join of the coefficient rings (or given explicitly);
    trailing zeros are always stripped so equal polynomials compare equal.
    """

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs=(), ring: str | None = None):
        cs = [as_int_if_integral(c) if isinstance(c, Fraction) and ring == "Int" else c
              for c in coeffs]
        r = ring or "Int"
        for c in cs:
            r = join_rings(r, ring_of(c))
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "ring", r)

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def x(cls) -> UniPoly:
        return cls((0, 1))

    @classmethod
    def monomial(cls, d: int, c=1) -> UniPoly:
        return cls([0] * d + [c])

    @classmethod
    def const(cls, c) -> UniPoly:
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else DEG_ZERO

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant(self):
        return self.coeffs[0] if self.coeffs else 0

    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    @staticmethod
    def _lift(x):
        if isinstance(x, UniPoly):
            return x
        if isinstance(x, (int, Fraction, QuadRat)) and not isinstance(x, bool):
            return UniPoly((x,))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly([self[k] + o[k] for k in range(n)], join_rings(self.ring, o.ring))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.ring)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly([self[k] - o[k] for k in range(n)], join_rings(self.ring, o.ring))

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        ring = join_rings(self.ring, o.ring)
        if not self.coeffs or not o.coeffs:
            return UniPoly((), ring)
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return UniPoly(out, ring)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("non-negative integer exponents only")
        out, base = UniPoly((1,), self.ring), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other):
        """Division by a scalar, or exact division by a polynomial."""
        if isinstance(other, UniPoly):
            return self.exact_div(other)
        if ring_of(other) not in RING_ORDER:
            raise RingError("UniPoly divisor must be a scalar or UniPoly")
        if other == 0:
            raise ZeroDivisionError("polynomial division by zero")
        cs = [_exact_scalar_div(c, other) for c in self.coeffs]
        return UniPoly(cs)

    def divmod(self, d: UniPoly) -> tuple[UniPoly, UniPoly]:
        if not d.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = d.degree
        lead = d.coeffs[-1]
        quot = [0] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            f = _exact_scalar_div(c, lead)
            quot[k - dd] = f
            for i, dc in enumerate(d.coeffs):
                rem[k - dd + i] -= f * dc
        return UniPoly(quot), UniPoly(rem[:dd] if dd > 0 else [])

    def exact_div(self, d: UniPoly) -> UniPoly:
        q, r = self.divmod(d)
        if r.coeffs:
            raise InexactDivision(f"({self}) / ({d}) leaves remainder {r}")
        return q

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    evaluate = __call__

    def reverse(self, d: int | None = None) -> UniPoly:
        """x^d * p(1/x); ``d`` defaults to the degree."""
        if d is None:
            d = max(self.degree, 0)
        if self.degree > d:
            raise ValueError(f"degree {self.degree} exceeds reversal degree {d}")
        cs = list(self.coeffs) + [0] * (d + 1 - len(self.coeffs))
        return UniPoly(cs[::-1], self.ring)

    def is_palindromic(self, d: int | None = None) -> bool:
        return self == self.reverse(d)

    def map_coeffs(self, f) -> UniPoly:
        return UniPoly([f(c) for c in self.coeffs])

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.coeffs == o.coeffs

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.constant())
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = to_str(c) if not isinstance(c, QuadRat) else f"({c})"
            terms.append(cs if k == 0 else f"{cs}*x^{k}")
        return " + ".join(terms)

    def to_strings(self) -> list[str]:
        return [to_str(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items) -> UniPoly:
        return cls([parse_scalar(s) for s in items])


def lagrange_interpolate(xs, ys) -> UniPoly:
    """The unique polynomial of degree < len(xs) through the points."""
    if len(xs) != len(ys) or len(set(xs)) != len(xs):
        raise ValueError("need distinct abscissae, one ordinate each")
    total = UniPoly(())
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = UniPoly((1,))
        denom = 1
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * UniPoly((-xj, 1))
                denom *= xi - xj
        total = total + basis * _exact_scalar_div(yi, denom)
    return total.map_coeffs(as_int_if_integral)
