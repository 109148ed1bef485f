"""Approximation for Maxmin k-Cut Reconfiguration.

Route: start -> F -> end through a random (or derandomized) target coloring F.
Low-degree vertices move into F before high-degree ones; on the way out the
high-degree ones leave first.  Every half uses its own irredundant flip order.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ValidationError
from .instances import Coloring, CutReconfigInstance, ReconfigSequence, SequenceBuilder, WeightedMultigraph
from .valuation import cut_value, sequence_value

RANDOM = "random"
UV, VU = "uv", "vu"


@dataclass(frozen=True)
class CutAlgoConfig:
    epsilon: Fraction | None = None  # None -> 1/k^3
    seed: int = 0
    mode: str = "derand"
    degree_threshold_exponent: Fraction = Fraction(2, 3)

    def eps_for(self, k: int) -> Fraction:
        eps = Fraction(1, k**3) if self.epsilon is None else Fraction(self.epsilon)
        if not 0 < eps < 1 - Fraction(1, k):
            raise ValidationError(f"epsilon must lie in (0, 1 - 1/k), got {eps}")
        return eps


@dataclass
class CutRunResult:
    sequence: ReconfigSequence
    value: Fraction
    bound: Fraction
    root_estimate: Fraction | None
    low_degree: list
    high_degree: list
    notes: list = field(default_factory=list)


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based Philox stream; identical on every platform."""
    return np.random.Generator(np.random.Philox(int(seed) & (2**64 - 1)))


# ------------------------------------------------------------ low value fix

def uplift_low_value(graph: WeightedMultigraph, f: Coloring):
    """Greedy strictly improving recolors until value >= 1 - 1/k.

    Returns (sequence starting at f, final coloring).
    """
    if not graph.edges:
        raise ValidationError("value of an edgeless graph is undefined")
    k, n = f.k, graph.n
    ints, _ = graph.integer_weights()
    W = sum(ints)
    adj = [[] for _ in range(n + 1)]
    for (u, v, _), w in zip(graph.edges, ints):
        adj[u].append((v, w))
        adj[v].append((u, w))
    col = list(f.colors)
    good = sum(w for (u, v, _), w in zip(graph.edges, ints) if col[u - 1] != col[v - 1])
    seq = SequenceBuilder(f)
    while good * k < W * (k - 1):
        best = None  # (gain, vertex, color)
        for v in range(1, n + 1):
            by = [0] * (k + 1)
            for u, w in adj[v]:
                by[col[u - 1]] += w
            cur = by[col[v - 1]]
            c = min(range(1, k + 1), key=lambda c: (by[c], c))
            gain = cur - by[c]
            if gain > 0 and (best is None or gain > best[0]):
                best = (gain, v, c)
        if best is None:  # cannot happen below 1 - 1/k
            raise AssertionError("no improving recolor below 1 - 1/k")
        gain, v, c = best
        col[v - 1] = c
        good += gain
        seq.set(v, c)
    return seq.build(), seq.current


# ------------------------------------------------------------ edge survival

def _allowed(T, forbid):
    return [c for c in T if c not in forbid]


def _survival_count(k, s, e, f, orders):
    """Survival count over denominator 4k^2 (exact integer)."""
    su, sv = s
    if su == sv:
        return 0
    if e is not None and e[0] == e[1]:
        return 0
    eu, ev = (None, None) if e is None else e
    fu, fv = f
    Tu = range(1, k + 1) if fu is None else (fu,)
    Tv = range(1, k + 1) if fv is None else (fv,)
    scale = k * k // (len(Tu) * len(Tv))
    o1, o2 = orders
    first = ((UV, 1), (VU, 1)) if o1 == RANDOM else ((o1, 2),)
    if e is None:
        second = ((None, 2),)
    else:
        second = ((UV, 1), (VU, 1)) if o2 == RANDOM else ((o2, 2),)
    total = 0
    for a, wa in first:
        for b, wb in second:
            fu_bad, fv_bad = set(), set()
            # first half: the earlier mover meets the other's start color
            if a == UV:
                fu_bad.add(sv)
            else:
                fv_bad.add(su)
            # second half: the earlier mover reaches its end color next to F
            if b == UV:
                fv_bad.add(eu)
            elif b == VU:
                fu_bad.add(ev)
            au, av = _allowed(Tu, fu_bad), _allowed(Tv, fv_bad)
            both = len(set(au) & set(av))
            total += wa * wb * (len(au) * len(av) - both)
    return total * scale


def edge_survival_prob(k: int, start_colors, end_colors=None, order_model=RANDOM,
                       targets=(None, None)) -> Fraction:
    """Probability that edge (u, v) stays bichromatic along start -> F (-> end).

    ``order_model`` is "random", "uv", "vu" or a pair (first half, second half)
    of those; "uv" means u is recolored before v.  A plain string applies to
    each half independently.  ``targets`` fixes F(u) / F(v) (None = uniform).
    With ``end_colors`` None only the start -> F half is walked.
    """
    if k < 2:
        raise ValidationError("k must be at least 2")
    orders = (order_model, order_model) if isinstance(order_model, str) else tuple(order_model)
    for o in orders:
        if o not in (RANDOM, UV, VU):
            raise ValidationError(f"unknown order model {o!r}")
    cnt = _survival_count(k, tuple(start_colors), None if end_colors is None else tuple(end_colors),
                          tuple(targets), orders)
    return Fraction(cnt, 4 * k * k)


# ------------------------------------------------------------ main route

def _split_degrees(graph: WeightedMultigraph, expo: Fraction):
    """H = {v : deg(v) > m^expo}, compared exactly via integer powers."""
    expo = Fraction(expo)
    m = graph.m
    deg = graph.degrees()
    low, high = [], []
    for v in range(1, graph.n + 1):
        if deg[v] ** expo.denominator > m**expo.numerator:
            high.append(v)
        else:
            low.append(v)
    return low, high


class _Estimator:
    """Σ_e w_e · 4k² · Pr[e bichromatic throughout | decisions], integer valued."""

    def __init__(self, graph, k, s, e, low, high, ints):
        self.k = k
        self.s, self.e = s, e
        self.cls = {}
        for v in low:
            self.cls[v] = 0
        for v in high:
            self.cls[v] = 1
        self.edges = [(u, v, w) for (u, v, _), w in zip(graph.edges, ints)]
        self.inc = [[] for _ in range(graph.n + 1)]
        for idx, (u, v, _) in enumerate(self.edges):
            self.inc[u].append(idx)
            self.inc[v].append(idx)
        self.F = [None] * (graph.n + 1)
        self.pos = [dict(), dict()]  # phase -> vertex -> rank

    def _order(self, phase, u, v):
        cu, cv = self.cls[u], self.cls[v]
        if cu != cv:
            # phase 0 moves the low class first, phase 1 the high class first
            u_first = (cu == 0) if phase == 0 else (cu == 1)
            return UV if u_first else VU
        pos = self.pos[phase]
        pu, pv = pos.get(u), pos.get(v)
        if pu is None and pv is None:
            return RANDOM
        if pv is None or (pu is not None and pu < pv):
            return UV
        return VU

    def edge(self, idx):
        u, v, w = self.edges[idx]
        cnt = _survival_count(
            self.k,
            (self.s[u - 1], self.s[v - 1]),
            (self.e[u - 1], self.e[v - 1]),
            (self.F[u], self.F[v]),
            (self._order(0, u, v), self._order(1, u, v)),
        )
        return w * cnt

    def total(self):
        return sum(self.edge(i) for i in range(len(self.edges)))

    def local(self, v):
        return sum(self.edge(i) for i in self.inc[v])


def _derandomize(graph, k, s, e, low, high, ints, check):
    est = _Estimator(graph, k, s, e, low, high, ints)
    root = cur = est.total()
    for v in range(1, graph.n + 1):
        base = est.local(v)
        best = None
        for c in range(1, k + 1):
            est.F[v] = c
            val = est.local(v)
            if best is None or val > best[0]:
                best = (val, c)
        est.F[v] = best[1]
        new = cur - base + best[0]
        if check and new < cur:
            raise AssertionError("estimator decreased while fixing F")
        cur = new
    orders = []
    for phase, groups in ((0, (low, high)), (1, (high, low))):
        for group in groups:
            remaining = sorted(group)
            placed = []
            while remaining:
                best = None
                for u in remaining:
                    base = est.local(u)
                    est.pos[phase][u] = len(placed)
                    val = est.local(u) - base
                    del est.pos[phase][u]
                    if best is None or val > best[0]:
                        best = (val, u)
                gain, u = best
                est.pos[phase][u] = len(placed)
                placed.append(u)
                remaining.remove(u)
                if check and gain < 0:
                    raise AssertionError("estimator decreased while ordering")
                cur += gain
            orders.append(placed)
    if check:
        assert cur == est.total()
    F = [est.F[v] for v in range(1, graph.n + 1)]
    return F, orders, root, cur


def run_approx_cut(inst: CutReconfigInstance, cfg: CutAlgoConfig = CutAlgoConfig(),
                   check: bool = True) -> CutRunResult:
    k, graph = inst.k, inst.graph
    if k < 2:
        raise ValidationError("k must be at least 2")
    if not graph.edges:
        raise ValidationError("value of an edgeless graph is undefined")
    if cfg.mode not in ("random", "derand"):
        raise ValidationError(f"unknown mode {cfg.mode!r}")
    eps = cfg.eps_for(k)
    notes = []
    if not graph.is_simple():
        msg = "weighted or parallel edges: guarantee is best effort only"
        warnings.warn(msg)
        notes.append(msg)
    half = Fraction(1, 2)
    s0, e0 = inst.start, inst.end
    head = ReconfigSequence("cut", (s0,))
    tail = ReconfigSequence("cut", (e0,))
    if cut_value(graph, s0) < half:
        head, s0 = uplift_low_value(graph, s0)
        notes.append("start uplifted")
    if cut_value(graph, e0) < half:
        tail, e0 = uplift_low_value(graph, e0)
        tail = tail.reversed()
        notes.append("end uplifted")
    low, high = _split_degrees(graph, cfg.degree_threshold_exponent)
    ints, _ = graph.integer_weights()
    W = sum(ints)
    root = None
    if cfg.mode == "random":
        rng = make_rng(cfg.seed)
        F = [int(c) for c in rng.integers(1, k + 1, size=graph.n)]
        orders = [[int(x) for x in rng.permutation(np.array(g, dtype=np.int64))] if g else []
                  for g in (low, high, high, low)]
    else:
        F, orders, root_cnt, _ = _derandomize(graph, k, s0.colors, e0.colors, low, high, ints, check)
        root = Fraction(root_cnt, 4 * k * k * W)
    b = SequenceBuilder(s0)
    for group in orders[:2]:
        for v in group:
            b.set(v, F[v - 1])
    for group in orders[2:]:
        for v in group:
            b.set(v, e0.colors[v - 1])
    mid = b.build()
    assert mid.steps[-1] == e0
    seq = head.concat(mid).concat(tail)
    value = sequence_value(inst, seq)
    # the estimator covers the detour only; uplift segments sit at the endpoint values
    if check and root is not None and min(cut_value(graph, c) for c in mid.steps) < root:
        raise AssertionError("derandomized value fell below the root estimator")
    bound = (1 - Fraction(1, k) - eps) ** 2 * min(cut_value(graph, inst.start), cut_value(graph, inst.end))
    if graph.m < 10**6:
        notes.append("m < 10^6: only the derandomized estimator bound is proven here")
    return CutRunResult(seq, value, bound, root, low, high, notes)


def approx_cut_reconfig(inst: CutReconfigInstance, cfg: CutAlgoConfig = CutAlgoConfig()) -> ReconfigSequence:
    return run_approx_cut(inst, cfg).sequence
