"""Named, machine-checkable identity checks.

Each ``check_*`` function returns a :class:`CheckResult`.  Polynomial
identities are compared exactly as polynomials, never by sampling.
"""

from __future__ import annotations

import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exactcore import InexactDivision, QuadRat, UniPoly, to_str
from .genfun import (
    GenSpec, combinatorial_point, entry_binom, entry_theta, make, tau_at_minus_one_exact,
    tau_of_w, weights_20v, weights_lastcol, WeightPoint, Q8,
)
from .matdet import det_exact, from_rows, is_unit_lower_triangular, truncate
from .oracles import (
    count_20v, count_dt, count_dt_tuples, m_entry_oracle, calibrate,
)
from .series import LaurentMulti, constant_term, convolve

__all__ = [
    "CheckResult", "REFERENCE", "SUITES", "run_suite", "suite_tasks",
    "z20", "zdt", "z20_ref", "zdt_ref", "h6v", "conjecture_product", "ct_value",
    "check_equivalence", "check_refined_20v", "check_refined_dt", "check_refined_relation",
    "check_h6v", "check_pentagon", "check_conjecture", "check_binom", "check_symcor",
    "check_ct", "check_gamma", "check_weights", "check_oracle_dt", "check_oracle_20v",
    "check_entry_grid",
]

CONJECTURE_LABEL = "conjecture-consistency"

# Reference values, ascending coefficients.
REFERENCE = {
    "z": [1, 4, 60, 3328, 678912],
    "pentagon_k0": [1, 3, 29, 901, 89893],
    "z20_ref": [
        [1],
        [1, 2, 1],
        [4, 15, 22, 15, 4],
        [60, 328, 772, 1008, 772, 328, 60],
        [3328, 23868, 76856, 145860, 179088, 145860, 76856, 23868, 3328],
    ],
    "zdt_ref": [
        [1],
        [3, 1],
        [37, 19, 4],
        [1780, 1100, 388, 60],
        [324948, 222716, 100724, 27196, 3328],
    ],
    "h6v": [
        ([1], 1),
        ([1, 1], 2),
        ([4, 7, 4], 15),
        ([15, 37, 37, 15], 104),
        ([64, 203, 282, 203, 64], 816),
    ],
}


@dataclass
class CheckResult:
    check: str
    params: dict
    status: str
    lhs: object
    rhs: object
    ms: float = 0.0
    label: str = "identity"
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_record(self) -> dict:
        d = asdict(self)
        d["ms"] = f"{self.ms:.3f}"
        return d


def _enc(x):
    if isinstance(x, UniPoly):
        return x.to_strings() or ["0"]
    if isinstance(x, (list, tuple)):
        return [_enc(c) for c in x]
    if isinstance(x, (int, Fraction, QuadRat)) and not isinstance(x, bool):
        return to_str(x)
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _result(name, params, ok, lhs, rhs, t0, label="identity", detail=""):
    return CheckResult(
        check=name,
        params={k: str(v) for k, v in params.items()},
        status="pass" if ok else "fail",
        lhs=_enc(lhs), rhs=_enc(rhs),
        ms=(time.perf_counter() - t0) * 1000.0,
        label=label, detail="" if ok else detail,
    )


# ---------------------------------------------------------------------------
# Cached determinant data


@lru_cache(maxsize=None)
def z20(n: int) -> int:
    """det of the n x n truncation of g20V; 1 for n = 0."""
    return 1 if n == 0 else det_exact(truncate(GenSpec("g20v"), n))


@lru_cache(maxsize=None)
def zdt(n: int) -> int:
    return 1 if n == 0 else det_exact(truncate(GenSpec("f_dt"), n))


@lru_cache(maxsize=None)
def z20_ref(n: int) -> UniPoly:
    return det_exact(truncate(GenSpec("g20v_ref", n), n))


@lru_cache(maxsize=None)
def zdt_ref(n: int) -> UniPoly:
    return det_exact(truncate(GenSpec("f_dt_ref", n), n))


def _one_plus_tau_pow(e: int) -> UniPoly:
    return UniPoly((1, 1)) ** e


@lru_cache(maxsize=None)
def h6v(n: int) -> UniPoly:
    """Route (a): determinant ratio with the 6V refined generator."""
    d = det_exact(truncate(GenSpec("g6v_ref", n), n))
    return d.exact_div(_one_plus_tau_pow(n - 1)) / z20(n)


def h6v_from_20v(n: int) -> UniPoly:
    """Route (b): h20V / ((1+tau)/2)^(n-1)."""
    return (z20_ref(n) * 2 ** (n - 1)).exact_div(_one_plus_tau_pow(n - 1)) / z20(n)


def h6v_normalized(h: UniPoly) -> tuple[list[int], int]:
    """Integer numerator coefficients over a common positive denominator."""
    den = 1
    for c in h.coeffs:
        den = math.lcm(den, Fraction(c).denominator)
    num = [int(Fraction(c) * den) for c in h.coeffs]
    g = math.gcd(den, *num) if num else den
    return [c // g for c in num], den // g


def conjecture_product(n: int) -> int:
    num = 2 ** (n * (n - 1) // 2)
    den = 1
    for i in range(n):
        num *= math.factorial(4 * i + 2)
        den *= math.factorial(n + 2 * i + 1)
    q, r = divmod(num, den)
    if r:
        raise InexactDivision(f"product formula is not an integer at n={n}")
    return q


def ct_factors(n: int, ascending: bool = True) -> list[LaurentMulti]:
    """Factors of the constant-term integrand, exact ones first.

    ``ascending`` uses prod_{i<j}(x_j - x_i), the orientation whose constant
    term is Z_n; the reverse orientation differs by (-1)^(n(n-1)/2).
    """
    one = LaurentMulti.const(n, 1)
    fs = []
    for i in range(n):
        for j in range(i + 1, n):
            xi, xj = LaurentMulti.variable(n, i), LaurentMulti.variable(n, j)
            diff = (xj - xi) if ascending else (xi - xj)
            fs.append(diff * (one + xi + xj - xi * xj))
    for i in range(n):
        e = [0] * n
        e[i] = -(2 * i + 1)
        fs.append(LaurentMulti.monomial(n, e))
    for i in range(n):
        fs.append(LaurentMulti.geometric_power(n, i, n, 2 * i + 1))
    return fs


def ct_value(n: int, ascending: bool = True):
    return constant_term(ct_factors(n, ascending))


# ---------------------------------------------------------------------------
# Checks


def check_equivalence(n: int) -> CheckResult:
    t0 = time.perf_counter()
    p, m = z20(n), zdt(n)
    lower = is_unit_lower_triangular(GenSpec("f_l"), n)
    lm = convolve(make(GenSpec("f_l"), (n - 1, n - 1)), make(GenSpec("f_dt"), (n - 1, n - 1)))
    same = lm == make(GenSpec("g20v"), (n - 1, n - 1))
    ok = p == m and lower and same
    detail = f"unit-lower={lower} LM=P window={same}"
    return _result("equivalence", {"n": n}, ok, p, m, t0, detail=detail)


def check_refined_20v(n: int) -> CheckResult:
    t0 = time.perf_counter()
    z = z20_ref(n)
    problems = []
    if n <= len(REFERENCE["z20_ref"]) and list(z.coeffs) != REFERENCE["z20_ref"][n - 1]:
        problems.append("differs from reference list")
    if not z.is_palindromic(2 * n - 2):
        problems.append("not palindromic in degree 2n-2")
    if z(0) != z20(n - 1):
        problems.append("Z_n(0) != Z_{n-1}")
    if z(1) != z20(n):
        problems.append("Z_n(1) != Z_n")
    rhs = REFERENCE["z20_ref"][n - 1] if n <= 5 else z.reverse(2 * n - 2)
    return _result("refined_20v", {"n": n}, not problems, z, rhs, t0, detail="; ".join(problems))


def check_refined_dt(n: int) -> CheckResult:
    t0 = time.perf_counter()
    z = zdt_ref(n)
    problems = []
    if n <= len(REFERENCE["zdt_ref"]) and list(z.coeffs) != REFERENCE["zdt_ref"][n - 1]:
        problems.append("differs from reference list")
    if z(1) != zdt(n):
        problems.append("Z(1) != Z_n")
    if z[n - 1] != zdt(n - 1):
        problems.append("leading coefficient != Z_{n-1}")
    rhs = REFERENCE["zdt_ref"][n - 1] if n <= 5 else [zdt(n), zdt(n - 1)]
    return _result("refined_dt", {"n": n}, not problems, z, rhs, t0, detail="; ".join(problems))


def refined_relation_rhs(n: int) -> UniPoly:
    """tau^n (Z_DT(tau) + tau^-1 Z_DT(1/tau)) / (1 + tau), division asserted exact."""
    zd = zdt_ref(n)
    numer = zd * UniPoly.monomial(n) + zd.reverse(n - 1)
    return numer.exact_div(UniPoly((1, 1)))


def check_refined_relation(n: int) -> CheckResult:
    t0 = time.perf_counter()
    z = z20_ref(n)
    try:
        rhs = refined_relation_rhs(n)
    except InexactDivision as exc:
        return _result("refined_relation", {"n": n}, False, z, "inexact", t0, detail=str(exc))
    problems = [] if z == rhs else ["polynomial identity fails"]
    zd = zdt_ref(n)

    def c20(m):  # Z_{n,m}, with Z_{n,0} = Z_{n,2n} = 0
        return z[m - 1] if 1 <= m <= 2 * n - 1 else 0

    for k in range(n):
        if zd[k] != c20(n + k + 1) + c20(n + k):
            problems.append(f"coefficient relation fails at k={k}")
        if zd[k] != c20(n - k - 1) + c20(n - k):
            problems.append(f"mirrored coefficient relation fails at k={k}")
    return _result("refined_relation", {"n": n}, not problems, z, rhs, t0,
                   detail="; ".join(problems))


def check_h6v(n: int) -> CheckResult:
    t0 = time.perf_counter()
    try:
        a = h6v(n)
        b = h6v_from_20v(n)
    except InexactDivision as exc:
        return _result("h6v", {"n": n}, False, "inexact", "", t0, detail=str(exc))
    problems = []
    if a != b:
        problems.append("determinant route and 20V route disagree")
    num, den = h6v_normalized(a)
    if n <= len(REFERENCE["h6v"]) and (num, den) != REFERENCE["h6v"][n - 1]:
        problems.append("differs from reference list")
    if a(1) != 1:
        problems.append("h(1) != 1")
    if not a.is_palindromic(n - 1):
        problems.append("not palindromic in degree n-1")
    if a[0] != a[n - 1]:
        problems.append("first and last coefficients differ")
    lhs = num + [f"/{den}"]
    rhs = list(REFERENCE["h6v"][n - 1][0]) + [f"/{REFERENCE['h6v'][n - 1][1]}"] if n <= 5 \
        else h6v_normalized(b)[0] + [f"/{h6v_normalized(b)[1]}"]
    return _result("h6v", {"n": n}, not problems, lhs, rhs, t0, detail="; ".join(problems))


def pentagon_values(n: int, k: int) -> tuple[int, int]:
    """Closed forms for Z(P(n,n-k)) and Z(T(n,n-k)) from determinant data."""
    if k == 2:
        return z20(n) - z20(n - 1), zdt(n) - zdt(n - 1)
    if k == 3:
        return (z20(n) - z20_ref(n)[1] - 2 * (n - 1) * z20(n - 1),
                zdt(n) - zdt_ref(n)[n - 2] - (2 * n - 3) * zdt(n - 1))
    raise ValueError("pentagon identities exist for k = 2 and 3")


def check_pentagon(n: int, k: int, oracle_max: int = 4) -> CheckResult:
    t0 = time.perf_counter()
    if n < k:
        raise ValueError(f"k={k} needs n >= {k}")
    a, b = pentagon_values(n, k)
    problems = [] if a == b else ["closed forms differ"]
    rhs = [b]
    if n <= oracle_max:
        o20 = count_20v(n, n - k).total
        odt = count_dt(n, n - k).total
        rhs += [o20, odt]
        if o20 != a:
            problems.append(f"20V oracle on P({n},{n - k}) gives {o20}")
        if odt != b:
            problems.append(f"DT oracle on T({n},{n - k}) gives {odt}")
    return _result(f"pentagon_k{k}", {"n": n, "k": k}, not problems, a, rhs, t0,
                   detail="; ".join(problems))


def check_conjecture(n: int) -> CheckResult:
    t0 = time.perf_counter()
    p, d = conjecture_product(n), z20(n)
    return _result("conjecture", {"n": n}, p == d, p, d, t0, label=CONJECTURE_LABEL)


def check_binom(n: int) -> CheckResult:
    t0 = time.perf_counter()
    d = det_exact(from_rows([[entry_binom(i, j) for j in range(n)] for i in range(n)]))
    return _result("binomial", {"n": n}, d == z20(n), d, z20(n), t0)


def symcor_value(n: int) -> QuadRat:
    d = det_exact(from_rows([[entry_theta(i, j) for j in range(n)] for i in range(n)]))
    e = n * (n - 1)  # prefactor 2^(e/4) / 2; e is even
    half = e // 2
    pref = QuadRat(Fraction(2) ** (half // 2)) if half % 2 == 0 else QuadRat(0, Fraction(2) ** (half // 2))
    return pref * d / 2


def check_symcor(n: int) -> CheckResult:
    t0 = time.perf_counter()
    v = symcor_value(n)
    ok = v.is_rational() and v.a.denominator == 1 and v == z20(n)
    return _result("sqrt2", {"n": n}, ok, v, z20(n), t0)


def check_ct(n: int) -> CheckResult:
    t0 = time.perf_counter()
    v = ct_value(n)
    return _result("constant_term", {"n": n}, v == z20(n), v, z20(n), t0)


def check_gamma(n: int, samples=(0, 1, 2), oracle_poly_max: int = 3, oracle_sample_max: int = 4
                ) -> CheckResult:
    t0 = time.perf_counter()
    problems = []
    lhs, rhs = [], []
    oracle = count_dt(n, gamma=True).total if n <= oracle_sample_max else None
    if n <= oracle_poly_max:
        sym = det_exact(truncate(GenSpec("f_dt_gamma"), n))
        lhs.append(sym)
        rhs.append(oracle)
        if sym != oracle:
            problems.append("symbolic determinant differs from weighted oracle")
    for g in samples:
        g = Fraction(g)
        d = det_exact(truncate(GenSpec("f_dt_gamma", gamma=g), n))
        if oracle is not None and d != oracle(g):
            problems.append(f"gamma={g}: determinant {d} vs oracle {oracle(g)}")
        ref = det_exact(truncate(GenSpec("f_dt_gamma_ref", n, g), n))
        bar = det_exact(truncate(GenSpec("bar_f_gamma_ref", n, g), n))
        if ref(1) != d:
            problems.append(f"gamma={g}: refined determinant at t=1 is {ref(1)}, not {d}")
        if bar != ref:
            problems.append(f"gamma={g}: bar-f and refined-gamma determinants differ")
        if g == 1:
            if d != zdt(n) or ref != zdt_ref(n):
                problems.append("gamma=1 does not reproduce the unweighted values")
        lhs.append(ref)
        rhs.append(bar)
    params = {"n": n, "gamma": ",".join(to_str(Fraction(g)) for g in samples)}
    return _result("gamma", params, not problems, lhs, rhs, t0, detail="; ".join(problems))


def weight_samples(count: int = 5, seed: int = 20) -> list[complex]:
    """Pseudo-random w in the upper half plane (where the sqrt branches agree)."""
    rng = random.Random(seed)
    out = [0.3 + 0.1j]
    while len(out) < count:
        out.append(complex(rng.uniform(-1.5, 1.5), rng.uniform(0.05, 1.5)))
    return out


def check_weights(samples: int = 5) -> CheckResult:
    t0 = time.perf_counter()
    problems = []
    dev = weights_20v(combinatorial_point()).max_deviation_from(1)
    if not dev < 1e-9:
        problems.append(f"combinatorial point deviation {dev}")
    bar_m1, tau_m1 = weights_lastcol(-1)
    dev_bar = bar_m1.max_deviation_from(1)
    if not dev_bar < 1e-12:
        problems.append(f"last-column weights at w=-1 deviate by {dev_bar}")
    ratio_err = 0.0
    ref = weights_20v(WeightPoint(q=Q8, z=Q8 ** 4, t=Q8 ** -2, w=-1))
    for w in weight_samples(samples):
        bar, _ = weights_lastcol(w)
        if bar[2] != bar[4]:
            problems.append("bar omega_2 != bar omega_4")
        num = weights_20v(WeightPoint(q=Q8, z=Q8 ** 4, t=Q8 ** -2, w=w))
        err = max(abs(a / b - c) for a, b, c in zip(num.omega, ref.omega, bar.omega))
        ratio_err = max(ratio_err, err)
    if not ratio_err < 1e-10:
        problems.append(f"ratio check error {ratio_err}")
    exact = tau_at_minus_one_exact()
    if exact != 1 or abs(tau_m1 - 1) > 1e-12 or abs(tau_of_w(-1) - 1) > 1e-12:
        problems.append("tau(-1) != 1")
    lhs = [f"{dev:.3e}", f"{dev_bar:.3e}", f"{ratio_err:.3e}", to_str(exact)]
    rhs = ["<1e-9", "<1e-12", "<1e-10", "1"]
    return _result("weights", {"samples": samples}, not problems, lhs, rhs, t0,
                   detail="; ".join(problems))


def check_entry_grid(size: int = 6) -> CheckResult:
    t0 = time.perf_counter()
    s = make(GenSpec("f_dt"), (size, size))
    a = [[m_entry_oracle(i, j) for j in range(size + 1)] for i in range(size + 1)]
    b = [[s.coeff(i, j) for j in range(size + 1)] for i in range(size + 1)]
    return _result("entry_grid", {"size": size}, a == b, a, b, t0)


def check_oracle_dt(n: int, tuple_max: int = 3) -> CheckResult:
    t0 = time.perf_counter()
    o = count_dt(n)
    problems = []
    if o.total != zdt(n):
        problems.append("total differs from determinant")
    if o.refined != list(zdt_ref(n).coeffs):
        problems.append("refined vector differs from refined determinant")
    if n <= tuple_max:
        if count_dt_tuples(n) != o.total:
            problems.append("tuple enumeration disagrees")
        ws = [count_dt_tuples(n, shift=s) for s in range(n + 1)]
        if [ws[s] - ws[s + 1] for s in range(n)] != o.refined:
            problems.append("shifted-endpoint differences disagree with refined vector")
    return _result("oracle_dt", {"n": n}, not problems, [o.total] + o.refined,
                   [zdt(n)] + list(zdt_ref(n).coeffs), t0, detail="; ".join(problems))


def check_oracle_20v(n: int) -> CheckResult:
    t0 = time.perf_counter()
    if n == 1:
        calibrate(n_max=1)
    o = count_20v(n)
    problems = []
    if o.total != z20(n):
        problems.append("total differs from determinant")
    if o.refined != list(z20_ref(n).coeffs):
        problems.append("refined vector differs from refined determinant")
    if o.refined != o.refined[::-1]:
        problems.append("refined vector not palindromic")
    p0 = count_20v(n, 0).total
    if n <= len(REFERENCE["pentagon_k0"]) and p0 != REFERENCE["pentagon_k0"][n - 1]:
        problems.append(f"P({n},0) gives {p0}")
    return _result("oracle_20v", {"n": n}, not problems, [o.total] + o.refined + [p0],
                   [z20(n)] + list(z20_ref(n).coeffs) + [REFERENCE["pentagon_k0"][n - 1]
                                                         if n <= 5 else "?"],
                   t0, detail="; ".join(problems))


# ---------------------------------------------------------------------------
# Suites

SUITES = ("all", "equivalence", "refined", "pentagon", "conjecture", "binomial",
          "sqrt2", "ct", "gamma", "weights", "oracle")

DEFAULT_N = 12
CONJECTURE_N = 30
CAPS = {"ct": 5, "sqrt2": 8, "gamma": 5, "oracle_dt": 5, "oracle_20v": 4, "pentagon_oracle": 4}

_CHECKS = {
    "equivalence": check_equivalence, "refined_20v": check_refined_20v,
    "refined_dt": check_refined_dt, "refined_relation": check_refined_relation,
    "h6v": check_h6v, "pentagon": check_pentagon, "conjecture": check_conjecture,
    "binomial": check_binom, "sqrt2": check_symcor, "ct": check_ct, "gamma": check_gamma,
    "weights": check_weights, "oracle_dt": check_oracle_dt, "oracle_20v": check_oracle_20v,
    "entry_grid": check_entry_grid,
}


def suite_tasks(suite: str, n_max: int | None = None) -> list[tuple[str, tuple]]:
    """The (check, args) list for a suite in deterministic order."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    det_n = n_max or DEFAULT_N
    tasks: list[tuple[str, tuple]] = []
    want = SUITES[1:] if suite == "all" else (suite,)
    for s in want:
        if s == "equivalence":
            tasks += [("equivalence", (n,)) for n in range(1, det_n + 1)]
        elif s == "refined":
            for name in ("refined_20v", "refined_dt", "refined_relation", "h6v"):
                tasks += [(name, (n,)) for n in range(1, det_n + 1)]
        elif s == "pentagon":
            tasks += [("pentagon", (n, 2, CAPS["pentagon_oracle"])) for n in range(2, det_n + 1)]
            tasks += [("pentagon", (n, 3, CAPS["pentagon_oracle"])) for n in range(3, det_n + 1)]
        elif s == "conjecture":
            tasks += [("conjecture", (n,)) for n in range(1, (n_max or CONJECTURE_N) + 1)]
        elif s == "binomial":
            tasks += [("binomial", (n,)) for n in range(1, det_n + 1)]
        elif s == "sqrt2":
            tasks += [("sqrt2", (n,)) for n in range(1, min(det_n, CAPS["sqrt2"]) + 1)]
        elif s == "ct":
            tasks += [("ct", (n,)) for n in range(1, min(det_n, CAPS["ct"]) + 1)]
        elif s == "gamma":
            tasks += [("gamma", (n,)) for n in range(1, min(det_n, CAPS["gamma"]) + 1)]
        elif s == "weights":
            tasks.append(("weights", ()))
        elif s == "oracle":
            tasks.append(("entry_grid", (6,)))
            tasks += [("oracle_dt", (n,)) for n in range(1, min(det_n, CAPS["oracle_dt"]) + 1)]
            tasks += [("oracle_20v", (n,)) for n in range(1, min(det_n, CAPS["oracle_20v"]) + 1)]
    return tasks


def _run_task(task: tuple[str, tuple]) -> CheckResult:
    name, args = task
    try:
        return _CHECKS[name](*args)
    except Exception as exc:  # a crashing check is a failing check
        return CheckResult(name, {"args": ",".join(map(str, args))}, "fail", "error", "",
                           detail=f"{type(exc).__name__}: {exc}")


def thread_count(default: int = 1) -> int:
    raw = os.environ.get("TWENTYV_THREADS", "")
    try:
        return max(1, int(raw)) if raw else default
    except ValueError:
        return default


def run_suite(suite: str, n_max: int | None = None, workers: int | None = None) -> list[CheckResult]:
    """Run a suite; output order is the task order regardless of workers."""
    tasks = suite_tasks(suite, n_max)
    workers = workers or thread_count()
    if workers <= 1 or len(tasks) <= 1:
        return [_run_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_task, tasks))
