"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

from __future__ import annotations

import time
from fractions import Fraction

import pytest

from twentyv.exactcore import InexactDivision, UniPoly
from twentyv.genfun import (
    GenSpec, Q8, WeightPoint, combinatorial_point, entry_binom, entry_theta,
    tau_at_minus_one_exact, weights_20v, weights_lastcol,
)
from twentyv.matdet import det_exact, from_rows, truncate
from twentyv.oracles import count_20v, count_dt
from twentyv.verify import (
    conjecture_product, ct_value, h6v, h6v_from_20v, h6v_normalized, pentagon_values,
    refined_relation_rhs, symcor_value, weight_samples, z20, z20_ref, zdt, zdt_ref,
)

Z = [1, 4, 60, 3328, 678912]
PENTAGON_K0 = [1, 3, 29, 901, 89893]
Z20_REF = [
    [1],
    [1, 2, 1],
    [4, 15, 22, 15, 4],
    [60, 328, 772, 1008, 772, 328, 60],
    [3328, 23868, 76856, 145860, 179088, 145860, 76856, 23868, 3328],
]
ZDT_REF = [
    [1],
    [3, 1],
    [37, 19, 4],
    [1780, 1100, 388, 60],
    [324948, 222716, 100724, 27196, 3328],
]
H6V = [([1], 1), ([1, 1], 2), ([4, 7, 4], 15), ([15, 37, 37, 15], 104),
       ([64, 203, 282, 203, 64], 816)]


@pytest.fixture
def report(capsys):
    def emit(number: int, title: str, ok: bool, seconds: float, note: str = ""):
        extra = f" {note}" if note else ""
        with capsys.disabled():
            print(f"\n[criterion {number:2d}] {'PASS' if ok else 'FAIL'} {title} "
                  f"({seconds:.2f}s){extra}")
    return emit


def test_criterion_01_determinant_sequence(report):
    t0 = time.perf_counter()
    p = [det_exact(truncate(GenSpec("g20v"), n)) for n in range(1, 6)]
    m = [det_exact(truncate(GenSpec("f_dt"), n)) for n in range(1, 6)]
    dt = time.perf_counter() - t0
    ok = p == Z and m == Z and dt < 1.0
    report(1, "determinant sequence 1,4,60,3328,678912", ok, dt)
    assert p == Z and m == Z
    assert dt < 1.0


def test_criterion_02_pentagon_sequence(report):
    t0 = time.perf_counter()
    got = [count_20v(n, 0).total for n in range(1, 5)]
    t4 = time.perf_counter() - t0
    got.append(count_20v(5, 0).total)
    dt = time.perf_counter() - t0
    ok = got == PENTAGON_K0 and t4 < 60
    report(2, "pentagon P(n,0) via 20V oracle, n=1..5", ok, dt, f"n<=4 in {t4:.2f}s")
    assert got == PENTAGON_K0
    assert t4 < 60


def test_criterion_03_oracle_vs_determinant(report):
    t0 = time.perf_counter()
    dt_ok = all(count_dt(n).total == zdt(n) for n in range(1, 6))
    v_ok = all(count_20v(n).total == z20(n) for n in range(1, 5))
    dt = time.perf_counter() - t0
    ok = dt_ok and v_ok and dt < 120
    report(3, "oracle totals equal determinants (DT n<=5, 20V n<=4)", ok, dt)
    assert dt_ok and v_ok
    assert dt < 120


def test_criterion_04_refined_20v(report):
    t0 = time.perf_counter()
    got = [list(z20_ref(n).coeffs) for n in range(1, 6)]
    dt = time.perf_counter() - t0
    ok = got == Z20_REF and dt < 5
    report(4, "refined 20V polynomials n=1..5", ok, dt)
    assert got == Z20_REF
    assert dt < 5


def test_criterion_05_refined_dt(report):
    t0 = time.perf_counter()
    got = [list(zdt_ref(n).coeffs) for n in range(1, 6)]
    dt = time.perf_counter() - t0
    ok = got == ZDT_REF and dt < 5
    report(5, "refined DT polynomials n=1..5", ok, dt)
    assert got == ZDT_REF
    assert dt < 5


def test_criterion_06_refined_relation(report):
    t0 = time.perf_counter()
    failures = []
    for n in range(1, 9):
        z, zd = z20_ref(n), zdt_ref(n)
        try:
            if refined_relation_rhs(n) != z:
                failures.append(f"relation n={n}")
        except InexactDivision:
            failures.append(f"inexact division n={n}")

        def c20(m):
            return z[m - 1] if 1 <= m <= 2 * n - 1 else 0

        for k in range(n):
            if not zd[k] == c20(n + k + 1) + c20(n + k) == c20(n - k - 1) + c20(n - k):
                failures.append(f"coefficients n={n} k={k}")
    dt = time.perf_counter() - t0
    report(6, "20V/DT refined relation and coefficient form, n=1..8", not failures, dt,
           "; ".join(failures))
    assert not failures


def test_criterion_07_h6v(report):
    t0 = time.perf_counter()
    failures = []
    for n in range(1, 9):
        try:
            a, b = h6v(n), h6v_from_20v(n)
        except InexactDivision:
            failures.append(f"inexact division n={n}")
            continue
        if a != b:
            failures.append(f"routes differ n={n}")
        if a(1) != 1 or not a.is_palindromic(n - 1):
            failures.append(f"normalization/palindromy n={n}")
        if n <= 5 and h6v_normalized(a) != H6V[n - 1]:
            failures.append(f"list n={n}")
    dt = time.perf_counter() - t0
    report(7, "h6V list n<=5, h(1)=1 and palindromic n<=8", not failures, dt, "; ".join(failures))
    assert not failures


def test_criterion_08_pentagon_identities(report):
    t0 = time.perf_counter()
    failures = []
    for k in (2, 3):
        for n in range(max(2, k), 9):
            a, b = pentagon_values(n, k)
            if a != b:
                failures.append(f"k={k} n={n}: {a} != {b}")
            if n <= 4:
                if count_20v(n, n - k).total != a:
                    failures.append(f"20V oracle k={k} n={n}")
                if count_dt(n, n - k).total != b:
                    failures.append(f"DT oracle k={k} n={n}")
    dt = time.perf_counter() - t0
    report(8, "pentagon identities k=2,3 for n<=8, oracles n<=4", not failures, dt,
           "; ".join(failures))
    assert not failures


def test_criterion_09_conjecture_consistency(report):
    t0 = time.perf_counter()
    bad = [n for n in range(1, 31) if conjecture_product(n) != z20(n)]
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60
    report(9, "product formula equals determinant n=1..30", ok, dt,
           f"mismatch at {bad}" if bad else "")
    assert not bad
    assert dt < 60


def test_criterion_10_alternative_formulas(report):
    t0 = time.perf_counter()
    failures = []
    for n in range(1, 13):
        d = det_exact(from_rows([[entry_binom(i, j) for j in range(n)] for i in range(n)]))
        if d != z20(n):
            failures.append(f"binomial n={n}")
    for n in range(1, 9):
        v = symcor_value(n)
        if not (v.is_rational() and Fraction(v.a).denominator == 1 and v == z20(n)):
            failures.append(f"sqrt2 n={n}")
        # the raw entries are genuinely in Q(sqrt2)
        assert any(not entry_theta(i, 0).is_rational() for i in range(2))
    t_ct = time.perf_counter()
    for n in range(1, 6):
        if ct_value(n) != z20(n):
            failures.append(f"constant term n={n}")
    ct_time = time.perf_counter() - t_ct
    if ct_time > 600:
        failures.append("constant term over 10 minutes")
    dt = time.perf_counter() - t0
    report(10, "binomial n<=12, sqrt2 n<=8, constant term n<=5", not failures, dt,
           "; ".join(failures))
    assert not failures


def test_criterion_11_gamma_family(report):
    t0 = time.perf_counter()
    failures = []
    for n in range(1, 4):
        sym = det_exact(truncate(GenSpec("f_dt_gamma"), n))
        if sym != count_dt(n, gamma=True).total:
            failures.append(f"symbolic n={n}")
    oracle4 = count_dt(4, gamma=True).total
    for g in (0, 1, 2):
        if det_exact(truncate(GenSpec("f_dt_gamma", gamma=g), 4)) != oracle4(g):
            failures.append(f"sample gamma={g} n=4")
    for n in range(1, 6):
        for g in (0, 1, 2, Fraction(1, 2)):
            ref = det_exact(truncate(GenSpec("f_dt_gamma_ref", n, g), n))
            bar = det_exact(truncate(GenSpec("bar_f_gamma_ref", n, g), n))
            if not isinstance(ref, UniPoly) or ref != bar:
                failures.append(f"refined vs bar-f n={n} gamma={g}")
        one = det_exact(truncate(GenSpec("f_dt_gamma", gamma=1), n))
        one_ref = det_exact(truncate(GenSpec("f_dt_gamma_ref", n, 1), n))
        if one != Z[n - 1] or list(one_ref.coeffs) != ZDT_REF[n - 1]:
            failures.append(f"gamma=1 n={n}")
    dt = time.perf_counter() - t0
    report(11, "gamma family: oracle, samples, bar-f, gamma=1", not failures, dt,
           "; ".join(failures))
    assert not failures


def test_criterion_12_numeric_weights(report):
    t0 = time.perf_counter()
    dev = weights_20v(combinatorial_point()).max_deviation_from(1)
    ref = weights_20v(WeightPoint(q=Q8, z=Q8 ** 4, t=Q8 ** -2, w=-1))
    ratio = 0.0
    ws = weight_samples(5)
    for w in ws:
        num = weights_20v(WeightPoint(q=Q8, z=Q8 ** 4, t=Q8 ** -2, w=w))
        bar, _ = weights_lastcol(w)
        ratio = max(ratio, max(abs(a / b - c) for a, b, c in zip(num.omega, ref.omega, bar.omega)))
    tau_ok = tau_at_minus_one_exact() == 1
    dt = time.perf_counter() - t0
    ok = len(ws) == 5 and dev < 1e-9 and ratio < 1e-10 and tau_ok
    report(12, "weights at combinatorial point, ratio check, tau(-1)=1", ok, dt,
           f"dev={dev:.1e} ratio={ratio:.1e}")
    assert dev < 1e-9
    assert ratio < 1e-10
    assert tau_ok
