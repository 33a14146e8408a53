"""Command-line interface: tables, refined polynomials, oracle counts, verification, rendering.

Exit codes: 0 all pass, 1 identity failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import asdict, dataclass, field

from . import __version__
from .exactcore import UniPoly, to_str
from .oracles import (
    MAX_20V_N, MAX_DT_N, OracleError, count_20v, count_dt, sample_dt_family,
)
from .verify import (
    CONJECTURE_LABEL, SUITES, h6v, h6v_normalized, pentagon_values,
    run_suite, thread_count, z20, z20_ref, zdt, zdt_ref,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    model: str | None = None
    n: int | None = None
    n_min: int = 1
    n_max: int | None = None
    k: int | None = None
    gamma: bool = False
    refined: bool = False
    suite: str | None = None
    fmt: str = "json"
    output: str | None = None
    strict_conjecture: bool = False
    threads: int = 1


@dataclass
class Report:
    version: str
    config: dict
    records: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def _enc(x):
    if isinstance(x, UniPoly):
        return x.to_strings() or ["0"]
    if isinstance(x, list):
        return [_enc(c) for c in x]
    return to_str(x) if not isinstance(x, str) else x


def value_record(check: str, params: dict, value, ms: float) -> dict:
    return {"check": check, "params": {k: str(v) for k, v in params.items()},
            "status": "value", "lhs": _enc(value), "rhs": "", "ms": f"{ms:.3f}"}


def _summarize(records: list[dict]) -> dict:
    s = {"pass": 0, "fail": 0, "skip": 0, "value": 0}
    for r in records:
        s[r["status"]] = s.get(r["status"], 0) + 1
    return {k: str(v) for k, v in s.items()}


# ---------------------------------------------------------------------------
# Commands


def table_value(model: str, n: int, k: int | None):
    """Z for Q_n / T_n, or for P(n,k) / T(n,k) when k is given."""
    if k is None or k == n - 1:
        return z20(n) if model == "20v" else zdt(n)
    if k < 0 or k > n - 1:
        raise ConfigError(f"truncation k={k} is outside 0..{n - 1} at n={n}")
    if k in (n - 2, n - 3):
        a, b = pentagon_values(n, n - k)
        return a if model == "20v" else b
    if model == "20v":
        if n > MAX_20V_N:
            raise ConfigError(f"P({n},{k}) needs the oracle, which supports n <= {MAX_20V_N}")
        return count_20v(n, k).total
    raise ConfigError(f"T({n},{k}) is only available for k in n-1, n-2, n-3")


def cmd_table(cfg: RunConfig) -> Report:
    recs = []
    for n in range(cfg.n_min, cfg.n_max + 1):
        t0 = time.perf_counter()
        v = table_value(cfg.model, n, cfg.k)
        params = {"model": cfg.model, "n": n}
        if cfg.k is not None:
            params["k"] = cfg.k
        recs.append(value_record("table", params, v, (time.perf_counter() - t0) * 1e3))
    return _report(cfg, recs)


def cmd_refined(cfg: RunConfig) -> Report:
    t0 = time.perf_counter()
    n = cfg.n
    if cfg.model == "20v":
        value = z20_ref(n)
    elif cfg.model == "dt":
        value = zdt_ref(n)
    else:
        num, den = h6v_normalized(h6v(n))
        rec = value_record("refined", {"model": "6v", "n": n}, num, 0.0)
        rec["rhs"] = str(den)
        rec["ms"] = f"{(time.perf_counter() - t0) * 1e3:.3f}"
        return _report(cfg, [rec])
    return _report(cfg, [value_record("refined", {"model": cfg.model, "n": n}, value,
                                      (time.perf_counter() - t0) * 1e3)])


def cmd_verify(cfg: RunConfig) -> Report:
    results = run_suite(cfg.suite, cfg.n_max, cfg.threads)
    return _report(cfg, [r.to_record() for r in results])


def cmd_oracle(cfg: RunConfig) -> Report:
    t0 = time.perf_counter()
    n = cfg.n
    if cfg.model == "20v":
        if cfg.gamma:
            raise ConfigError("the gamma weight exists only for the domino model")
        if n > MAX_20V_N:
            raise ConfigError(f"20v oracle supports n <= {MAX_20V_N}")
        o = count_20v(n, cfg.k)
    else:
        if n > MAX_DT_N:
            raise ConfigError(f"dt oracle supports n <= {MAX_DT_N}")
        o = count_dt(n, cfg.k, gamma=cfg.gamma)
    params = {"model": cfg.model, "n": n, "k": o.k}
    rec = value_record("oracle", params, o.total, (time.perf_counter() - t0) * 1e3)
    if cfg.refined:
        rec["rhs"] = _enc(list(o.refined))
    return _report(cfg, [rec])


def render_svg(n: int) -> str:
    family = sample_dt_family(n)
    pts = [p for path in family for p in path]
    xmax = max(x for x, _ in pts) + 1
    ymax = max(y for _, y in pts) + 1
    s = 30
    w, h = (xmax + 1) * s, (ymax + 1) * s
    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
           f'viewBox="0 0 {w} {h}">', '<rect width="100%" height="100%" fill="white"/>']

    def px(x, y):
        return (x + 0.5) * s, h - (y + 0.5) * s

    for x in range(xmax + 1):
        for y in range(ymax + 1):
            if (x + y) % 2 == 0:
                cx, cy = px(x, y)
                out.append(f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="1.5" fill="#bbb"/>')
    for idx, path in enumerate(family):
        coords = " ".join("{:.1f},{:.1f}".format(*px(x, y)) for x, y in path)
        out.append(f'<polyline points="{coords}" fill="none" stroke="{colors[idx % len(colors)]}" '
                   f'stroke-width="3"/>')
        for x, y in path:
            cx, cy = px(x, y)
            out.append(f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="3" fill="{colors[idx % len(colors)]}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_render(cfg: RunConfig) -> Report:
    if cfg.n > MAX_DT_N:
        raise ConfigError(f"render supports n <= {MAX_DT_N}")
    t0 = time.perf_counter()
    svg = render_svg(cfg.n)
    path = cfg.output or f"dt_family_n{cfg.n}.svg"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg)
    return _report(cfg, [value_record("render", {"model": "dt", "n": cfg.n}, path,
                                      (time.perf_counter() - t0) * 1e3)])


def _report(cfg: RunConfig, records: list[dict]) -> Report:
    conf = {k: ("" if v is None else str(v)) for k, v in asdict(cfg).items()}
    return Report(__version__, conf, records, _summarize(records))


# ---------------------------------------------------------------------------
# Output


def emit(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["model", "n", "k", "value", "status"])
        for r in report.records:
            p = r["params"]
            model = p.get("model", r["check"])
            val = r["lhs"]
            if isinstance(val, list):
                val = ";".join(json.dumps(v) if isinstance(v, list) else v for v in val)
            wr.writerow([model, p.get("n", ""), p.get("k", ""), val, r["status"]])
        return buf.getvalue()
    lines = []
    for r in report.records:
        p = " ".join(f"{k}={v}" for k, v in r["params"].items())
        lhs = r["lhs"] if not isinstance(r["lhs"], list) else "[" + ", ".join(map(str, r["lhs"])) + "]"
        rhs = r["rhs"] if not isinstance(r["rhs"], list) else "[" + ", ".join(map(str, r["rhs"])) + "]"
        tail = f" | {rhs}" if rhs not in ("", []) else ""
        note = f" ({r['label']})" if r.get("label") == CONJECTURE_LABEL else ""
        lines.append(f"{r['status'].upper():5} {r['check']} {p}: {lhs}{tail}{note}")
        if r.get("detail"):
            lines.append(f"      {r['detail']}")
    s = report.summary
    lines.append("summary: " + ", ".join(f"{k}={v}" for k, v in s.items()))
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> dict:
    return json.loads(text)


# ---------------------------------------------------------------------------
# Argument handling


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twentyv", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="json")
        sp.add_argument("--output", "-o", default=None, help="write the report here")

    t = sub.add_parser("table", help="partition functions over a range of n")
    t.add_argument("--model", choices=("20v", "dt"), required=True)
    t.add_argument("--n-min", type=int, default=1)
    t.add_argument("--n-max", type=int, required=True)
    t.add_argument("--pentagon", "-k", dest="k", type=int, default=None,
                   help="truncation index k of P(n,k) / T(n,k)")
    common(t)

    r = sub.add_parser("refined", help="refined partition polynomial")
    r.add_argument("--model", choices=("20v", "dt", "6v"), required=True)
    r.add_argument("--n", type=int, required=True)
    common(r)

    v = sub.add_parser("verify", help="run identity checks")
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("--n-max", type=int, default=None)
    v.add_argument("--strict-conjecture", action="store_true",
                   help="let conjecture-consistency failures set the exit code")
    common(v)

    o = sub.add_parser("oracle", help="direct combinatorial count")
    o.add_argument("--model", choices=("20v", "dt"), required=True)
    o.add_argument("--n", type=int, required=True)
    o.add_argument("-k", "--k", dest="k", type=int, default=None)
    o.add_argument("--refined", action="store_true")
    o.add_argument("--gamma", action="store_true", help="weight gamma per horizontal step")
    common(o)

    g = sub.add_parser("render", help="SVG of one non-intersecting path family")
    g.add_argument("--model", choices=("dt",), default="dt")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--output", "-o", default=None)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command, threads=thread_count())
    for name in ("model", "n", "n_min", "n_max", "k", "gamma", "refined", "suite", "fmt",
                 "output", "strict_conjecture"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    validate(cfg)
    return cfg


def validate(cfg: RunConfig) -> None:
    if cfg.command == "table":
        if cfg.n_min < 1 or cfg.n_max < cfg.n_min:
            raise ConfigError("need 1 <= n-min <= n-max")
        if cfg.n_max > 60:
            raise ConfigError("n-max above 60 is outside desk scale")
    if cfg.command in ("refined", "oracle", "render"):
        if cfg.n is None or cfg.n < 1:
            raise ConfigError("--n must be at least 1")
    if cfg.command == "refined" and cfg.n > 30:
        raise ConfigError("refined polynomials are supported for n <= 30")
    if cfg.command == "verify" and cfg.n_max is not None and cfg.n_max < 1:
        raise ConfigError("--n-max must be at least 1")


COMMANDS = {"table": cmd_table, "refined": cmd_refined, "verify": cmd_verify,
            "oracle": cmd_oracle, "render": cmd_render}


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        report = COMMANDS[cfg.command](cfg)
    except (ConfigError, OracleError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.command != "render":
        text = emit(report, cfg.fmt)
        if cfg.output:
            with open(cfg.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        sys.stdout.write(emit(report, "text"))
    failed = [r for r in report.records if r["status"] == "fail"
              and (cfg.strict_conjecture or r.get("label") != CONJECTURE_LABEL)]
    return EXIT_FAIL if failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
