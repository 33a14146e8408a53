"""Truncated generator matrices and exact determinants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactcore import InexactDivision, UniPoly, as_int_if_integral, lagrange_interpolate
from .genfun import GenSpec, make
from .series import BiSeries, _ring, convolve

__all__ = [
    "GenMatrix", "LastColumnError", "truncate", "from_rows", "det_exact",
    "det_poly_lastcol", "det_eval_interp", "bareiss", "gauss_det", "matmul",
    "is_unit_lower_triangular", "truncation_product_check",
]


class LastColumnError(ValueError):
    """A column other than the last carries the formal variable."""


@dataclass(frozen=True)
class GenMatrix:
    ring: str
    n: int
    entries: tuple
    provenance: str = ""

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list[list]:
        return [list(r) for r in self.entries]


def from_rows(rows, provenance: str = "") -> GenMatrix:
    rows = tuple(tuple(as_int_if_integral(c) if isinstance(c, Fraction) else c for c in r)
                 for r in rows)
    n = len(rows)
    if n < 1 or any(len(r) != n for r in rows):
        raise ValueError("need a non-empty square matrix")
    return GenMatrix(_ring(c for r in rows for c in r), n, rows, provenance)


def truncate(spec: GenSpec | BiSeries, n: int) -> GenMatrix:
    """The n x n matrix of coefficients u^i v^j, 0 <= i, j < n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if isinstance(spec, BiSeries):
        s, prov = spec, "series"
    else:
        s, prov = make(spec, (n - 1, n - 1)), spec.name
    return from_rows([[s.coeff(i, j) for j in range(n)] for i in range(n)], prov)


def _exact_div(a, b):
    if isinstance(a, UniPoly) or isinstance(b, UniPoly):
        a = a if isinstance(a, UniPoly) else UniPoly((a,))
        b = b if isinstance(b, UniPoly) else UniPoly((b,))
        return a.exact_div(b)
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise InexactDivision(f"{a} / {b}")
        return q
    return a / b


def bareiss(rows) -> object:
    """Fraction-free elimination; every division is asserted exact."""
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = _exact_div(pk * row_i[j] - mik * row_k[j], prev)
            row_i[k] = 0
        prev = pk
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def gauss_det(rows):
    """Gaussian elimination over a field (Fraction or QuadRat entries)."""
    m = [[Fraction(c) if isinstance(c, int) else c for c in r] for r in rows]
    n = len(m)
    det = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if m[r][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        pk = m[k][k]
        det = det * pk
        for i in range(k + 1, n):
            if m[i][k] == 0:
                continue
            f = m[i][k] / pk
            for j in range(k + 1, n):
                m[i][j] = m[i][j] - f * m[k][j]
    return as_int_if_integral(det) if isinstance(det, Fraction) else det


def _lastcol_eligible(m: GenMatrix) -> bool:
    return all(not isinstance(m[i, j], UniPoly) or m[i, j].is_constant()
               for i in range(m.n) for j in range(m.n - 1))


def det_exact(m: GenMatrix):
    rows = m.entries
    if m.ring == "Int":
        return bareiss(rows)
    if m.ring in ("Rat", "QuadRat"):
        return gauss_det(rows)
    if m.ring == "UniPoly":
        if _lastcol_eligible(m):
            return det_poly_lastcol(m)
        # gamma-symbolic matrices carry the variable everywhere
        d = bareiss([[c if isinstance(c, UniPoly) else UniPoly((c,)) for c in r] for r in rows])
        return d if isinstance(d, UniPoly) else UniPoly((d,))
    raise ValueError(f"unsupported ring {m.ring}")


def _scalar(c):
    if isinstance(c, UniPoly):
        return c.constant()
    return c


def det_poly_lastcol(m: GenMatrix) -> UniPoly:
    """Cofactor expansion along the last column, the only one carrying the variable."""
    if not _lastcol_eligible(m):
        raise LastColumnError("a column other than the last depends on the formal variable")
    n = m.n
    total = UniPoly(())
    for i in range(n):
        c = m[i, n - 1]
        if c == 0:
            continue
        minor_rows = [[_scalar(m[r, j]) for j in range(n - 1)] for r in range(n) if r != i]
        if n == 1:
            minor = 1
        else:
            minor = det_exact(from_rows(minor_rows))
        if minor == 0:
            continue
        term = (c if isinstance(c, UniPoly) else UniPoly((c,))) * minor
        total = total + term if (i + n - 1) % 2 == 0 else total - term
    return total.map_coeffs(lambda x: as_int_if_integral(x) if isinstance(x, Fraction) else x)


def det_eval_interp(m: GenMatrix) -> UniPoly:
    """Determinant of a polynomial matrix by evaluation and interpolation (test oracle)."""
    n = m.n
    deg = max((c.degree for r in m.entries for c in r if isinstance(c, UniPoly)), default=0)
    bound = n * max(deg, 0)
    xs = list(range(bound + 1))
    ys = []
    for x in xs:
        rows = [[c(x) if isinstance(c, UniPoly) else c for c in r] for r in m.entries]
        ys.append(det_exact(from_rows(rows)))
    return lagrange_interpolate(xs, ys)


def matmul(a: GenMatrix, b: GenMatrix) -> GenMatrix:
    n = a.n
    rows = [[sum((a[i, t] * b[t, j] for t in range(n)), 0) for j in range(n)] for i in range(n)]
    return from_rows(rows, f"{a.provenance}*{b.provenance}")


def is_unit_lower_triangular(spec: GenSpec | BiSeries, n: int) -> bool:
    m = truncate(spec, n)
    for i in range(n):
        if m[i, i] != 1:
            return False
        if any(m[i, j] != 0 for j in range(i + 1, n)):
            return False
    return True


def truncation_product_check(L: GenSpec | BiSeries, A: GenSpec | BiSeries, n: int) -> bool:
    """(LA)_n equals L_n A_n entrywise and det((LA)_n) = det(A_n)."""
    if not is_unit_lower_triangular(L, n):
        raise ValueError("left factor must be unit lower triangular")
    sL = L if isinstance(L, BiSeries) else make(L, (n - 1, n - 1))
    sA = A if isinstance(A, BiSeries) else make(A, (n - 1, n - 1))
    prod = convolve(sL.truncate(n - 1, n - 1), sA.truncate(n - 1, n - 1))
    Ln, An = truncate(sL, n), truncate(sA, n)
    if truncate(prod, n).entries != matmul(Ln, An).entries:
        return False
    return det_exact(truncate(prod, n)) == det_exact(An)
