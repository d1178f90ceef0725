"""Growing intersected-networks under preferential attachment, with degree
distributions, growth fits and kinematics.

Vertex v carries the hyperedge {2v} | {2e+1 : e incident to v}: the odd
labels shared by two hyperedges are exactly their common edges, so the
network is the intersected-graph of its hyperedge family at every step.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import PreconditionError
from .graph_core import Graph


@dataclass(frozen=True)
class SimConfig:
    m: int = 2
    m0: Optional[int] = None
    steps: int = 100
    seed: int = 0
    growth: Tuple = ("linear",)

    def __post_init__(self):
        if self.m < 1:
            raise PreconditionError("m must be at least 1")
        if self.m0 is not None and self.m0 < max(self.m, 2):
            raise PreconditionError("m0 must be at least max(m, 2)")
        if self.steps < 1:
            raise PreconditionError("steps must be at least 1")

    @property
    def start(self) -> int:
        return self.m0 if self.m0 is not None else self.m + 1


@dataclass
class NetState:
    t: int
    edges: List[Tuple[int, int]]
    degree: List[int]
    history: List[Tuple[int, int, int]]
    rng_state: object
    # each edge end listed once; uniform draws from it are degree-proportional
    ends: List[int] = field(repr=False, default_factory=list)

    @property
    def v_net(self) -> int:
        return len(self.degree)

    @property
    def e_net(self) -> int:
        return len(self.edges)

    def graph(self) -> Graph:
        return Graph(self.v_net, self.edges)

    def hyperedges(self) -> List[frozenset]:
        hs = [{2 * v} for v in range(self.v_net)]
        for i, (a, b) in enumerate(self.edges):
            hs[a].add(2 * i + 1)
            hs[b].add(2 * i + 1)
        return [frozenset(h) for h in hs]

    def copy(self) -> "NetState":
        return NetState(self.t, list(self.edges), list(self.degree), list(self.history),
                        self.rng_state, list(self.ends))


def init(cfg: SimConfig) -> NetState:
    n = cfg.start
    edges = [(a, b) for a in range(n) for b in range(a + 1, n)]
    deg = [n - 1] * n
    ends = [x for e in edges for x in e]
    rng = random.Random(cfg.seed)
    return NetState(0, edges, deg, [(0, n, len(edges))], rng.getstate(), ends)


def attachment_probabilities(s: NetState) -> List[float]:
    total = sum(s.degree)
    return [k / total for k in s.degree]


def _advance(s: NetState, cfg: SimConfig, rng: random.Random) -> None:
    new = s.v_net
    if cfg.m > new:
        raise PreconditionError("not enough vertices to attach to")
    chosen: List[int] = []
    while len(chosen) < cfg.m:
        x = s.ends[rng.randrange(len(s.ends))]
        if x not in chosen:
            chosen.append(x)
    s.degree.append(0)
    for x in chosen:
        s.edges.append((x, new))
        s.degree[x] += 1
        s.degree[new] += 1
        s.ends += [x, new]
    s.t += 1
    s.history.append((s.t, s.v_net, s.e_net))


def step(s: NetState, cfg: SimConfig) -> NetState:
    """One new vertex joined to m distinct vertices drawn with probability
    proportional to degree (successive draws, repeats rejected)."""
    out = s.copy()
    rng = random.Random()
    rng.setstate(s.rng_state)
    _advance(out, cfg, rng)
    out.rng_state = rng.getstate()
    return out


def run(cfg: SimConfig) -> NetState:
    s = init(cfg)
    rng = random.Random()
    rng.setstate(s.rng_state)
    for _ in range(cfg.steps):
        _advance(s, cfg, rng)
    s.rng_state = rng.getstate()
    return s


@dataclass
class GrowthFit:
    law: str
    a_v: float
    b_v: float
    a_e: float
    b_e: float


def fit_growth(history: Sequence[Tuple[int, int, int]], law: Sequence = ("linear",)) -> GrowthFit:
    """Least squares for v = a_v g(t) + b_v, e = a_e h(t) + b_e, with
    g = h = t (linear) or g = r^t, h = s^t (exponential, r and s given)."""
    h = np.asarray(history, dtype=float)
    if len(h) < 2:
        raise PreconditionError("need at least two history points")
    t = h[:, 0]
    if law[0] == "linear":
        gv = ge = t
    elif law[0] == "exponential":
        r = float(law[1])
        s = float(law[2]) if len(law) > 2 else r
        gv, ge = r ** t, s ** t
    else:
        raise PreconditionError(f"unknown growth law {law[0]!r}")
    av, bv = np.linalg.lstsq(np.column_stack([gv, np.ones_like(t)]), h[:, 1], rcond=None)[0]
    ae, be = np.linalg.lstsq(np.column_stack([ge, np.ones_like(t)]), h[:, 2], rcond=None)[0]
    return GrowthFit(law[0], float(av), float(bv), float(ae), float(be))


DIST_KINDS = ("pk", "cum", "ecum", "decum")


def distributions(s: NetState, kind: str) -> Dict[int, float]:
    """pk: degree pmf.  cum(k): share of vertices with degree >= k.
    ecum(k): share of edges whose smaller end-degree is >= k.
    decum(k): sum over k' >= k of k' * (edges with smaller end-degree k') / e_net."""
    if kind in ("pk", "cum"):
        counts: Dict[int, int] = {}
        for k in s.degree:
            counts[k] = counts.get(k, 0) + 1
        n = s.v_net
    elif kind in ("ecum", "decum"):
        counts = {}
        for a, b in s.edges:
            k = min(s.degree[a], s.degree[b])
            counts[k] = counts.get(k, 0) + 1
        n = s.e_net
    else:
        raise PreconditionError(f"unknown distribution {kind!r}")
    ks = sorted(counts)
    if kind == "pk":
        return {k: counts[k] / n for k in ks}
    out = {}
    acc = 0.0
    for k in reversed(ks):
        acc += (k if kind == "decum" else 1) * counts[k] / n
        out[k] = acc
    return dict(sorted(out.items()))


def cum_at(table: Dict[int, float], k: int) -> float:
    """Step-function value of a tail table at any k (0 beyond the largest key)."""
    later = [key for key in table if key >= k]
    return table[min(later)] if later else 0.0


@dataclass
class ExponentFit:
    gamma: float
    stderr: float
    points: int


def fit_exponent(table: Dict[int, float], k_min: int = 5, cumulative: bool = True) -> ExponentFit:
    """Least-squares slope of log P_cum against log k over k >= k_min;
    gamma = 1 - slope.  With cumulative=False the table is a pmf and it is
    summed into its tail first."""
    if not cumulative:
        tail = {}
        acc = 0.0
        for k in sorted(table, reverse=True):
            acc += table[k]
            tail[k] = acc
        table = tail
    pts = sorted((k, v) for k, v in table.items() if k >= k_min and v > 0)
    if len(pts) < 5:
        raise PreconditionError(f"only {len(pts)} tail points at k >= {k_min}; need 5")
    x = np.log([k for k, _ in pts])
    y = np.log([v for _, v in pts])
    a = np.column_stack([x, np.ones_like(x)])
    coef, res, _, _ = np.linalg.lstsq(a, y, rcond=None)
    slope = coef[0]
    resid = y - a @ coef
    dof = len(pts) - 2
    s2 = float(resid @ resid) / dof if dof > 0 else 0.0
    se = math.sqrt(s2 / float(((x - x.mean()) ** 2).sum())) if dof > 0 else 0.0
    return ExponentFit(1.0 - float(slope), se, len(pts))


@dataclass
class Kinematics:
    v_velocity: float
    e_velocity: float
    velocity: float
    speed_ratio: float
    average_degree: float
    sparse: bool


def kinematics(history: Sequence[Tuple[int, int, int]]) -> Kinematics:
    """Finite differences over the last history step.  `sparse` holds when
    e_net <= v_net * ln(v_net)."""
    if len(history) < 2:
        raise PreconditionError("need at least two history points")
    (t0, v0, e0), (t1, v1, e1) = history[-2], history[-1]
    dt = t1 - t0
    dv, de = (v1 - v0) / dt, (e1 - e0) / dt
    return Kinematics(dv, de, math.hypot(dv, de), de / dv if dv else math.inf,
                      2 * e1 / v1, e1 <= v1 * math.log(v1) if v1 > 1 else True)


def history_csv(history) -> str:
    return "t,v_net,e_net\n" + "".join(f"{t},{v},{e}\n" for t, v, e in history)


def table_csv(table: Dict[int, float]) -> str:
    return "k,value\n" + "".join(f"{k},{v!r}\n" for k, v in table.items())
