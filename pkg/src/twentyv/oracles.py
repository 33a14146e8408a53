"""Direct combinatorial counters that never use determinants.

* Schröder path counts by dynamic programming over steps.
* Non-intersecting Schröder path families for Aztec triangles T(n,k), by a
  frontier sweep over x (plain, refined, and weighted by gamma per
  horizontal step), plus a brute-force tuple enumerator for small n.
* Twenty-vertex configurations on pentagons P(n,k), by a column-major
  vertex sweep of osculating-path edge occupancies, plus a brute-force
  edge enumerator for tiny domains.
"""

from __future__ import annotations

import enum
import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import product

from .exactcore import UniPoly

__all__ = [
    "OracleError", "OracleBoundError", "CalibrationError", "SchroderStep",
    "PathEndpoints", "OracleCount", "BoundarySpec", "count_schroder",
    "m_entry_oracle", "count_dt", "count_dt_tuples", "count_20v",
    "count_20v_bruteforce", "schroder_paths", "calibrate", "MAX_DT_N", "MAX_20V_N",
    "sample_dt_family",
]

MAX_DT_N = 6
MAX_20V_N = 5
MAX_TUPLE_N = 4


class OracleError(ValueError):
    """Unsupported parameters for an oracle."""


class OracleBoundError(OracleError):
    """Size beyond what the oracle supports at desk scale."""


class CalibrationError(AssertionError):
    """The boundary table does not reproduce the reference sequences."""


class SchroderStep(enum.Enum):
    UP = (1, 1)
    DOWN = (1, -1)
    HORIZONTAL = (2, 0)


@dataclass(frozen=True)
class PathEndpoints:
    starts: tuple
    ends: tuple

    @classmethod
    def triangle(cls, n: int, shift: int = 0) -> PathEndpoints:
        """Starts (0, 2i), ends (2j+1, 2j+1); the last end moved by (-shift, shift)."""
        starts = tuple((0, 2 * i) for i in range(n))
        ends = [(2 * j + 1, 2 * j + 1) for j in range(n)]
        x, y = ends[-1]
        ends[-1] = (x - shift, y + shift)
        return cls(starts, tuple(ends))

    def __post_init__(self):
        if list(self.starts) != sorted(set(self.starts), key=lambda p: p[1]):
            raise ValueError("starts must be strictly ordered by height")
        if len(set(self.ends)) != len(self.ends):
            raise ValueError("ends must be distinct")


@dataclass
class OracleCount:
    model: str
    n: int
    k: int
    total: object
    refined: list = field(default_factory=list)
    statistic: str = ""
    split: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.refined:
            s = sum(self.refined[1:], self.refined[0])
            if s != self.total:
                raise AssertionError("refined vector does not sum to the total")


# ---------------------------------------------------------------------------
# Single Schröder paths


@lru_cache(maxsize=None)
def count_schroder(dx: int, dy: int) -> int:
    """Number of Schröder paths from the origin to (dx, dy)."""
    if dx < 0 or abs(dy) > dx or (dx - dy) % 2:
        raise OracleError(f"no Schröder path reaches ({dx}, {dy})")
    # ways[x][y] over x = 0..dx
    ways = [defaultdict(int) for _ in range(dx + 1)]
    ways[0][0] = 1
    for x in range(dx):
        for y, c in ways[x].items():
            ways[x + 1][y + 1] += c
            ways[x + 1][y - 1] += c
            if x + 2 <= dx:
                ways[x + 2][y] += c
    return ways[dx][dy]


def m_entry_oracle(i: int, j: int) -> int:
    """Paths from (0, 2i) to (2j+1, 2j+1)."""
    if i < 0 or j < 0:
        raise OracleError("indices must be non-negative")
    dy = 2 * j + 1 - 2 * i
    if abs(dy) > 2 * j + 1:
        return 0
    return count_schroder(2 * j + 1, dy)


def schroder_paths(start, end, ymax: int | None = None):
    """All Schröder paths start -> end as (vertex tuple, horizontal-step count)."""
    (x0, y0), (x1, y1) = start, end
    out = []

    def rec(x, y, verts, h):
        if x == x1:
            if y == y1:
                out.append((tuple(verts), h))
            return
        for (sx, sy), is_h in (((1, 1), 0), ((1, -1), 0), ((2, 0), 1)):
            nx, ny = x + sx, y + sy
            if nx > x1 or abs(y1 - ny) > x1 - nx:
                continue
            if ymax is not None and ny > ymax:
                continue
            verts.append((nx, ny))
            rec(nx, ny, verts, h + is_h)
            verts.pop()

    rec(x0, y0, [(x0, y0)], 0)
    return out


# ---------------------------------------------------------------------------
# Aztec triangles


def _dt_cap(n: int, k: int) -> int:
    if k not in {n - 1, n - 2, n - 3} or k < 0:
        raise OracleError(f"T({n},{k}) unsupported: k must be n-1, n-2 or n-3 and >= 0")
    # T(n, n-1) is uncapped in effect; each unit of truncation removes the
    # topmost layer of reachable vertices.
    return 2 * n - 1 + k


def count_dt(n: int, k: int | None = None, gamma: bool = False) -> OracleCount:
    """Families of n vertex-disjoint Schröder paths (0,2i) -> (2i+1,2i+1).

    The refined vector is indexed by k' = 2n-1-x where (x, 4n-2-x) is the
    first vertex of the family on the line x + y = 4n - 2.  With
    ``gamma=True`` weights are polynomials in gamma counting horizontal steps.
    """
    if n < 1:
        raise OracleError("n must be at least 1")
    if n > MAX_DT_N:
        raise OracleBoundError(f"Aztec-triangle oracle supports n <= {MAX_DT_N}")
    k = n - 1 if k is None else k
    ymax = _dt_cap(n, k)
    line = 4 * n - 2
    # state: (vertex heights at x, heights of horizontal steps landing at x+1, tag, h count)
    states = {(tuple(2 * i for i in range(n)), (), None, 0): 1}
    for x in range(2 * n - 1):
        x1 = x + 1
        nxt: dict = defaultdict(int)
        for (verts, flying, tag, hc), c in states.items():
            for moves in product((1, -1, 0), repeat=len(verts)):
                landed = list(flying)
                launched = []
                for y, mv in zip(verts, moves):
                    if mv == 0:
                        launched.append(y)
                    else:
                        landed.append(y + mv)
                if len(set(landed)) != len(landed) or any(y > ymax for y in landed):
                    continue
                t = tag
                if t is None and (line - x1) in landed:
                    t = 2 * n - 1 - x1
                if x1 % 2 == 1:
                    if x1 not in landed:
                        continue
                    landed.remove(x1)
                key = (tuple(sorted(landed)), tuple(sorted(launched)), t,
                       hc + len(launched) if gamma else 0)
                nxt[key] += c
        states = nxt
    refined: list = [0] * n
    for (verts, flying, t, hc), c in states.items():
        assert not verts and not flying
        w = UniPoly.monomial(hc, c) if gamma else c
        refined[t] = refined[t] + w
    if gamma:
        refined = [r if isinstance(r, UniPoly) else UniPoly((r,)) for r in refined]
    total = sum(refined[1:], refined[0])
    return OracleCount("DT", n, k, total, refined, "first-hit-distance")


def count_dt_tuples(n: int, k: int | None = None, shift: int = 0, gamma: bool = False):
    """Brute force: enumerate every path tuple and keep the vertex-disjoint ones.

    ``shift`` moves the last endpoint by (-shift, shift).  Returns an int, or
    a UniPoly in gamma.
    """
    if n > MAX_TUPLE_N:
        raise OracleBoundError(f"tuple enumeration supports n <= {MAX_TUPLE_N}")
    k = n - 1 if k is None else k
    ymax = _dt_cap(n, k)
    ep = PathEndpoints.triangle(n, shift)
    per = [schroder_paths(s, e, ymax) for s, e in zip(ep.starts, ep.ends)]
    acc: dict = defaultdict(int)

    def rec(i, used, h):
        if i == n:
            acc[h] += 1
            return
        for verts, hh in per[i]:
            vs = set(verts)
            if vs & used:
                continue
            rec(i + 1, used | vs, h + hh)

    rec(0, frozenset(), 0)
    if gamma:
        return UniPoly([acc.get(d, 0) for d in range(max(acc, default=0) + 1)])
    return sum(acc.values())


def sample_dt_family(n: int) -> list:
    """One non-intersecting family for T(n), chosen greedily from the bottom path up."""
    ep = PathEndpoints.triangle(n)
    used: set = set()
    family = []
    for s, e in zip(ep.starts, ep.ends):
        for verts, _ in schroder_paths(s, e):
            if not set(verts) & used:
                family.append(list(verts))
                used |= set(verts)
                break
        else:
            raise OracleError("greedy sampling failed")
    return family


# ---------------------------------------------------------------------------
# Twenty-vertex model on pentagons


@dataclass(frozen=True)
class BoundarySpec:
    """Occupancy of each class of dangling boundary edge.

    Classes are keyed by (side, kind): W horizontal-in, W diagonal-in,
    N vertical-in, N diagonal-in, SW horizontal-in, E horizontal-out,
    E diagonal-out, S vertical-out, S diagonal-out.
    """

    name: str
    rules: tuple
    calibration: tuple = ()

    def occupied(self, side: str, kind: str) -> int:
        for s, k, occ in self.rules:
            if s == side and k == kind:
                return int(occ)
        raise KeyError(f"no boundary rule for {side} {kind}")

    @classmethod
    def from_json(cls, text: str) -> BoundarySpec:
        d = json.loads(text)
        rules = tuple((r["side"], r["kind"], bool(r["occupied"])) for r in d["rules"])
        cal = tuple(sorted((k, tuple(v)) for k, v in d.get("calibration", {}).items()))
        return cls(d["name"], rules, cal)

    def to_json(self) -> str:
        return json.dumps({
            "name": self.name,
            "rules": [{"side": s, "kind": k, "occupied": o} for s, k, o in self.rules],
            "calibration": {k: list(v) for k, v in self.calibration},
        }, indent=2)

    @classmethod
    def default(cls) -> BoundarySpec:
        return _default_boundary()

    def edges(self, n: int, k: int) -> list[dict]:
        """Explicit list of the dangling boundary edges of P(n,k)."""
        out = []
        for v, kind, side in _boundary_edges(n, k):
            out.append({"side": side, "kind": kind, "x": v[0], "y": v[1],
                        "occupied": bool(self.occupied(side, kind))})
        return out


@lru_cache(maxsize=1)
def _default_boundary() -> BoundarySpec:
    text = resources.files("twentyv").joinpath("data/dwbc3.json").read_text()
    return BoundarySpec.from_json(text)


def _ybot(x: int, k: int) -> int:
    return -min(x, k)


def _domain(n: int, k: int) -> list[tuple[int, int]]:
    return [(x, y) for x in range(n) for y in range(n - 1, _ybot(x, k) - 1, -1)]


def _boundary_edges(n: int, k: int):
    """(vertex, kind, side) for every edge with exactly one end in P(n,k)."""
    dom = set(_domain(n, k))
    for (x, y) in sorted(dom):
        if (x - 1, y) not in dom:
            yield (x, y), "horizontal-in", "W" if x == 0 else "SW"
        if (x - 1, y + 1) not in dom:
            yield (x, y), "diagonal-in", "W" if x == 0 else "N"
        if (x, y + 1) not in dom:
            yield (x, y), "vertical-in", "N"
        if (x + 1, y) not in dom:
            yield (x, y), "horizontal-out", "E"
        if (x + 1, y - 1) not in dom:
            yield (x, y), "diagonal-out", "E" if x == n - 1 else "S"
        if (x, y - 1) not in dom:
            yield (x, y), "vertical-out", "S"


def _check_20v_args(n: int, k: int | None) -> int:
    if n < 1:
        raise OracleError("n must be at least 1")
    if n > MAX_20V_N:
        raise OracleBoundError(f"twenty-vertex oracle supports n <= {MAX_20V_N}")
    k = n - 1 if k is None else k
    if k not in {n - 1, n - 2, n - 3, 0} or k < 0:
        raise OracleError(f"P({n},{k}) unsupported: k must be n-1, n-2, n-3 or 0")
    return k


def count_20v(n: int, k: int | None = None, boundary: BoundarySpec | None = None) -> OracleCount:
    """Osculating-path configurations on P(n,k) with the given boundary.

    Every vertex conserves occupancy: in (horizontal + diagonal + vertical)
    equals out.  The refined vector is indexed by the label (1 at the bottom)
    of the vertex of the last column where a path first enters it; the
    split records whether that entry used a horizontal ("-") or diagonal
    ("\\") edge.
    """
    k = _check_20v_args(n, k)
    b = boundary or BoundarySpec.default()
    W_h, W_d = b.occupied("W", "horizontal-in"), b.occupied("W", "diagonal-in")
    N_v, N_d = b.occupied("N", "vertical-in"), b.occupied("N", "diagonal-in")
    SW_h = b.occupied("SW", "horizontal-in")
    E_h, E_d = b.occupied("E", "horizontal-out"), b.occupied("E", "diagonal-out")
    S_v, S_d = b.occupied("S", "vertical-out"), b.occupied("S", "diagonal-out")

    top = n - 1

    def rows_of(x):
        return list(range(top, _ybot(x, k) - 1, -1))

    rows0 = rows_of(0)
    states = {tuple((W_h, W_d) for _ in rows0): 1}
    for x in range(n):
        rows = rows_of(x)
        last = x == n - 1
        bottom = rows[-1]
        next_bottom = None if last else _ybot(x + 1, k)
        partial: dict = defaultdict(int)
        for st, c in states.items():
            partial[(st, (), N_v, None)] += c
        for idx, y in enumerate(rows):
            nxt: dict = defaultdict(int)
            for (st, out, v, tag), c in partial.items():
                h, d = st[idx]
                tot = h + d + v
                ho_opts = (E_h,) if last else (0, 1)
                d_leaves = last or y - 1 < next_bottom
                do_opts = ((E_d if last else S_d),) if d_leaves else (0, 1)
                for ho in ho_opts:
                    for do in do_opts:
                        vo = tot - ho - do
                        if vo not in (0, 1):
                            continue
                        if y == bottom and vo != S_v:
                            continue
                        t = tag
                        if last and t is None and v == 0 and vo == 1:
                            t = (len(rows) - idx, "-" if h else "\\")
                        nxt[(st, out + ((ho, do),), vo, t)] += c
            partial = nxt
        new: dict = defaultdict(int)
        if last:
            for (_, _, _, t), c in partial.items():
                new[t] += c
            states = new
            break
        rows1 = rows_of(x + 1)
        for (st, out, v, tag), c in partial.items():
            hmap = {y: o[0] for y, o in zip(rows, out)}
            dmap = {y - 1: o[1] for y, o in zip(rows, out)}
            ns = tuple((hmap.get(y, SW_h), dmap.get(y, N_d)) for y in rows1)
            new[ns] += c
        states = new
    size = len(rows_of(n - 1))
    refined = [0] * size
    split = {"-": [0] * size, "\\": [0] * size}
    for t, c in states.items():
        if t is None:
            raise CalibrationError("a configuration never enters the last column")
        label, kind = t
        refined[label - 1] += c
        split[kind][label - 1] += c
    return OracleCount("20V", n, k, sum(refined), refined, "last-column-entry", split)


def count_20v_bruteforce(n: int, k: int | None = None, boundary: BoundarySpec | None = None) -> int:
    """Enumerate internal edge occupancies directly; tiny domains only."""
    k = n - 1 if k is None else k
    b = boundary or BoundarySpec.default()
    dom = _domain(n, k)
    domset = set(dom)
    internal = []
    for (x, y) in dom:
        for dx, dy in ((1, 0), (1, -1), (0, -1)):
            if (x + dx, y + dy) in domset:
                internal.append(((x, y), (x + dx, y + dy)))
    if len(internal) > 22:
        raise OracleBoundError("domain too large for brute-force enumeration")
    fixed_in = defaultdict(int)
    fixed_out = defaultdict(int)
    for v, kind, side in _boundary_edges(n, k):
        occ = b.occupied(side, kind)
        if kind.endswith("-in"):
            fixed_in[v] += occ
        else:
            fixed_out[v] += occ
    count = 0
    for bits in product((0, 1), repeat=len(internal)):
        ins = dict(fixed_in)
        outs = dict(fixed_out)
        for (a, c), on in zip(internal, bits):
            if on:
                outs[a] = outs.get(a, 0) + 1
                ins[c] = ins.get(c, 0) + 1
        if all(ins.get(v, 0) == outs.get(v, 0) for v in dom):
            count += 1
    return count


def calibrate(boundary: BoundarySpec | None = None, n_max: int = 4) -> None:
    """Check the boundary table against its reference sequences."""
    b = boundary or BoundarySpec.default()
    cal = dict(b.calibration)
    for n in range(1, n_max + 1):
        for key, k in (("quadrangle", n - 1), ("pentagon_k0", 0)):
            ref = cal.get(key)
            if ref and n <= len(ref):
                got = count_20v(n, k, b).total
                if got != ref[n - 1]:
                    raise CalibrationError(f"{key} n={n}: got {got}, expected {ref[n - 1]}")
