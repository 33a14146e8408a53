from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from twentyv.exactcore import UniPoly
from twentyv.series import (
    BiPoly, BiSeries, LaurentMulti, RatFun2, SeriesError, TruncationError, U, V,
    WindowOverflowError, constant_term, convolve, expand, odd_v_half, sqrt_series,
    stretch_v, substitute_u, useries_inv, useries_mul,
)

G20 = (1 + U * U) * (1 + 2 * U - U * U) / ((1 - U * U * V) * ((1 - U) ** 2 - V * (1 + U) ** 2))
FDT = (1 + U) / (1 - V - 4 * U * V - U * U * V + U * U * V * V)
FL = (1 + 2 * U - U * U) / (1 - U - U * V - U * U * V)
IDENT = 1 / (1 - U * V)


def brute_schroder(dx, dy):
    """Count step words directly (independent of any generating function)."""
    if dx == 0:
        return int(dy == 0)
    if dx < 0:
        return 0
    return brute_schroder(dx - 1, dy - 1) + brute_schroder(dx - 1, dy + 1) + brute_schroder(dx - 2, dy)


def test_expand_examples():
    sig = expand(1 / (1 - U - V - U * V), (2, 2))
    assert sig.coeff(1, 1) == 3 == brute_schroder(2, 0)
    ident = expand(IDENT, (4, 4))
    assert all(ident.coeff(i, j) == int(i == j) for i in range(5) for j in range(5))
    assert expand(G20, (2, 2)).coeff(1, 0) == 4


def test_coeff_examples():
    f = expand(FDT, (3, 3))
    assert f.coeff(0, 0) == 1
    # paths (0,2) -> (3,3): three orderings of U,U,D and two of U,H
    assert f.coeff(1, 1) == 5 == brute_schroder(3, 1)
    assert expand(G20, (2, 2)).coeff(1, 1) == 8


def test_coeff_beyond_orders_raises():
    f = expand(FDT, (2, 2))
    with pytest.raises(TruncationError):
        f.coeff(3, 0)
    with pytest.raises(TruncationError):
        f.coeff(0, 3)


def test_expand_rejects_singular_origin():
    with pytest.raises(SeriesError):
        expand(RatFun2(1, U + V), (2, 2))


bipolys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-5, 5), max_size=6
).map(BiPoly)


@given(bipolys, bipolys, st.integers(-3, 3).filter(lambda c: c != 0))
def test_expand_times_denominator_is_numerator(num, den_rest, d0):
    terms = dict(den_rest.terms)
    terms[(0, 0)] = d0
    den = BiPoly(terms)
    orders = (4, 4)
    s = expand(RatFun2(num, den), orders)
    back = s * expand(RatFun2(den, 1), orders)
    assert back == expand(RatFun2(num, 1), orders)


def test_convolve_examples():
    f = expand(FDT, (5, 5))
    assert convolve(expand(IDENT, (5, 5)), f) == f
    assert convolve(expand(FL, (5, 5)), f) == expand(G20, (5, 5))
    lam = expand((1 - U) / (1 - U - V * U), (3, 3))
    assert convolve(lam, expand(G20, (3, 3))).coeff(1, 0) == 4


def test_convolve_needs_inner_order():
    with pytest.raises(TruncationError):
        convolve(expand(FL, (4, 2)), expand(FDT, (2, 4)))


def test_convolve_rejects_non_triangular_left_factor():
    with pytest.raises(TruncationError):
        convolve(expand(FDT, (3, 3)), expand(FDT, (3, 3)))


lower = st.integers(1, 4).flatmap(lambda n: st.lists(
    st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n).map(
        lambda rows: BiSeries([[r[j] if j <= i else 0 for j, _ in enumerate(r)]
                               for i, r in enumerate(rows)])))


@given(st.data())
def test_convolve_associative(data):
    n = data.draw(st.integers(1, 4))
    mk = st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)
    a, b, c = (data.draw(mk) for _ in range(3))
    tri = lambda rows: BiSeries([[x if j <= i else 0 for j, x in enumerate(r)] for i, r in enumerate(rows)])
    A, B, C = tri(a), tri(b), BiSeries(c)
    assert convolve(convolve(A, B), C) == convolve(A, convolve(B, C))


@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=4, max_size=4))
def test_convolve_identity(rows):
    f = BiSeries(rows)
    assert convolve(expand(IDENT, (3, 3)), f) == f


def test_substitute_examples():
    target = expand(G20, (4, 4))
    sub = substitute_u(FDT, ([0, 1, 1], [1, -1]), (4, 4))
    scale = expand(RatFun2(1 + 2 * U - U * U, 1 - U), (4, 4))
    assert sub * scale == target
    f = expand(FDT, (4, 4))
    assert substitute_u(f, [0, 1], (4, 4)) == f


def test_substitute_gamma_two():
    g = Fraction(2)
    fdtg = (1 + U) / (1 - V - 2 * (1 + g) * U * V - U * U * V + g * g * U * U * V * V)
    bar = ((1 + g * U * U) * (1 + 2 * g * U - g * U * U)
           / ((1 - g * g * U * U * V) * ((1 - U) ** 2 - V * (1 + g * U) ** 2)))
    sub = substitute_u(fdtg, ([0, 1, g], [1, -1]), (3, 3))
    scale = expand(RatFun2(1 + 2 * g * U - g * U * U, 1 - U), (3, 3))
    assert sub * scale == expand(bar, (3, 3))


def test_substitute_rejects_moving_origin():
    with pytest.raises(SeriesError):
        substitute_u(FDT, [1, 1], (2, 2))


def test_sqrt_examples():
    assert sqrt_series([1, 6, 1], 2) == [1, 3, -4]
    assert sqrt_series([1], 3) == [1, 0, 0, 0]
    s = sqrt_series([1, 6, 1], 6)
    ap = [Fraction(a + b, 2) for a, b in zip([1, 1, 0, 0, 0, 0, 0], s)]
    assert ap[:3] == [1, 2, -2]
    # alpha^2 - (1+u) alpha - u == 0
    sq = useries_mul(ap, ap, 6)
    lin = useries_mul([1, 1], ap, 6)
    assert [a - b - c for a, b, c in zip(sq, lin, [0, 1, 0, 0, 0, 0, 0])] == [0] * 7
    with pytest.raises(SeriesError):
        sqrt_series([2, 1], 3)


@given(st.lists(st.fractions(max_denominator=9, min_value=-9, max_value=9), min_size=1, max_size=6),
       st.integers(0, 7))
def test_sqrt_squares_back(tail, N):
    p = [1] + tail
    s = sqrt_series(p, N)
    pad = (p + [0] * (N + 1))[: N + 1]
    assert useries_mul(s, s, N) == [Fraction(c) for c in pad]


def test_sqrt_over_polynomial_coefficients():
    g = UniPoly.x()
    s = sqrt_series([1, 2 * (1 + 2 * g), 1], 4)
    at_one = [c(1) if isinstance(c, UniPoly) else c for c in s]
    assert at_one == sqrt_series([1, 6, 1], 4)


def test_odd_half_examples():
    assert odd_v_half([0, 1]) == [1]
    assert odd_v_half([1] * 9) == [1] * 4
    # odd part of 1/(1 - v - u v - u v^2) in v, halved, gives the domino generator
    N = 6
    raw = expand(1 / (1 - V - U * V - U * V * V), (N, 2 * N + 1))
    fdt = expand(FDT, (N, N))
    for i in range(N + 1):
        assert odd_v_half(list(raw.grid[i]))[: N + 1] == list(fdt.grid[i])


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=10))
def test_odd_half_inverts_stretch_and_shift(f):
    assert odd_v_half([0] + stretch_v(f)) == f


def test_inverse_series():
    inv = useries_inv([1, -1], 5)
    assert inv == [1] * 6


def ct_integrand(n, ascending=True):
    one = LaurentMulti.const(n, 1)
    fs = []
    for i in range(n):
        for j in range(i + 1, n):
            xi, xj = LaurentMulti.variable(n, i), LaurentMulti.variable(n, j)
            fs.append(((xj - xi) if ascending else (xi - xj)) * (one + xi + xj - xi * xj))
    for i in range(n):
        e = [0] * n
        e[i] = -(2 * i + 1)
        fs.append(LaurentMulti.monomial(n, e))
    fs += [LaurentMulti.geometric_power(n, i, n, 2 * i + 1) for i in range(n)]
    return fs


def test_constant_term_examples():
    one_var = [LaurentMulti.monomial(1, [-1]), LaurentMulti.geometric_power(1, 0, 1, 1)]
    assert constant_term(one_var) == 1
    assert constant_term(ct_integrand(2)) == 4
    assert constant_term(ct_integrand(3)) == 60


def test_constant_term_orientation_sign():
    for n in range(1, 5):
        sign = (-1) ** (n * (n - 1) // 2)
        assert constant_term(ct_integrand(n, ascending=False)) == sign * constant_term(ct_integrand(n))


def test_constant_term_window_overflow():
    fs = [LaurentMulti.monomial(1, [-3]), LaurentMulti.geometric_power(1, 0, 2, 1)]
    with pytest.raises(WindowOverflowError):
        constant_term(fs)


def test_constant_term_matches_bruteforce_small():
    # CT of (x + 1/x)^4 = 6
    x = LaurentMulti.variable(1, 0)
    xi = LaurentMulti.monomial(1, [-1])
    f = x + xi
    assert constant_term([f, f, f, f]) == 6


def test_debug_json_dump():
    import json
    s = expand(FDT, (1, 1))
    d = json.loads(s.to_json())
    assert d["grid"] == [["1", "1"], ["1", "5"]] and d["orders"] == [1, 1]
