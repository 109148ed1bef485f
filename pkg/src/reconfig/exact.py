"""Exact maxmin reconfiguration by bottleneck connectivity.

Every configuration is a mixed-radix integer (site 1 least significant).  All
configurations are valued at once with numpy, the single-site moves become
edges whose level is the smaller endpoint value, and a Kruskal pass with
union-find stops as soon as start and end share a component.
"""
from __future__ import annotations

import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BudgetExceeded, ValidationError
from .instances import (
    Assignment,
    Coloring,
    CutReconfigInstance,
    ReconfigSequence,
    SatReconfigInstance,
)

DEFAULT_BUDGET = 1 << 20


@dataclass(frozen=True)
class ExactResult:
    opt: Fraction
    witness: ReconfigSequence
    explored: int


def _digits(idx: np.ndarray, n: int, radix: int) -> np.ndarray:
    pw = radix ** np.arange(n, dtype=np.int64)
    return (idx[:, None] // pw[None, :]) % radix


def _encode(values, radix: int) -> int:
    return sum(int(v) * radix**i for i, v in enumerate(values))


def _chunked(total: int, threads: int, fn) -> np.ndarray:
    """Evaluate fn(lo, hi) over index chunks; result is independent of threads."""
    threads = max(1, threads)
    if threads == 1 or total < 4096:
        return fn(0, total)
    bounds = np.linspace(0, total, threads + 1).astype(np.int64)
    with ThreadPoolExecutor(max_workers=threads) as ex:
        parts = list(ex.map(lambda b: fn(int(b[0]), int(b[1])), zip(bounds[:-1], bounds[1:])))
    return np.concatenate(parts)


def _find(parent: list, a: int) -> int:
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


def _bottleneck(n: int, radix: int, vals: np.ndarray, s: int, t: int):
    """Return (threshold numerator, explored count, path of indices)."""
    N = radix**n
    if s == t:
        return int(vals[s]), 1, [s]
    src, dst = [], []
    idx = np.arange(N, dtype=np.int64)
    for i in range(n):
        p = radix**i
        d = (idx // p) % radix
        for delta in range(1, radix):
            a = idx[d + delta < radix]
            src.append(a)
            dst.append(a + delta * p)
    src = np.concatenate(src)
    dst = np.concatenate(dst)
    level = np.minimum(vals[src], vals[dst])
    # descending level, ties broken by (src, dst) for reproducibility
    order = np.lexsort((dst, src, -level))
    parent = list(range(N))
    thr = None
    for e in order.tolist():
        ra, rb = _find(parent, int(src[e])), _find(parent, int(dst[e]))
        if ra != rb:
            parent[ra] = rb
            if _find(parent, s) == _find(parent, t):
                thr = int(level[e])
                break
    assert thr is not None  # the configuration graph is connected
    explored = int((vals >= thr).sum())
    # BFS inside the >= thr sublevel set for a shortest witness
    prev = {s: -1}
    q = deque([s])
    while q:
        a = q.popleft()
        if a == t:
            break
        for i in range(n):
            p = radix**i
            d = (a // p) % radix
            for c in range(radix):
                if c == d:
                    continue
                b = a + (c - d) * p
                if b not in prev and vals[b] >= thr:
                    prev[b] = a
                    q.append(b)
    path = []
    a = t
    while a != -1:
        path.append(a)
        a = prev[a]
    return thr, explored, path[::-1]


def _threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("RECONFIG_THREADS", "1") or 1)
    return max(1, threads)


def opt_cut_exact(inst: CutReconfigInstance, budget: int = DEFAULT_BUDGET,
                  threads: int | None = None) -> ExactResult:
    n, k = inst.graph.n, inst.k
    total = k**n
    if total > budget:
        raise BudgetExceeded(f"{k}^{n} = {total} colorings exceed budget {budget}")
    ints, L = inst.graph.integer_weights()
    W = sum(ints)
    if W == 0:
        raise ValidationError("value of an edgeless graph is undefined")
    eu = np.array([u - 1 for u, _, _ in inst.graph.edges], dtype=np.int64)
    ev = np.array([v - 1 for _, v, _ in inst.graph.edges], dtype=np.int64)
    big = W >= 2**62
    w = np.array(ints, dtype=object if big else np.int64)

    def chunk(lo, hi):
        d = _digits(np.arange(lo, hi, dtype=np.int64), n, k)
        bich = d[:, eu] != d[:, ev]
        return bich.astype(w.dtype) @ w

    vals = _chunked(total, _threads(threads), chunk)
    s = _encode([c - 1 for c in inst.start.colors], k)
    t = _encode([c - 1 for c in inst.end.colors], k)
    thr, explored, path = _bottleneck(n, k, vals, s, t)
    steps = []
    for a in path:
        steps.append(Coloring(k, tuple(int(c) + 1 for c in _digits(np.array([a]), n, k)[0])))
    return ExactResult(Fraction(thr, W), ReconfigSequence("cut", tuple(steps)), explored)


def opt_sat_exact(inst: SatReconfigInstance, budget: int = DEFAULT_BUDGET,
                  threads: int | None = None) -> ExactResult:
    phi = inst.formula
    n = phi.n
    total = 2**n
    if total > budget:
        raise BudgetExceeded(f"2^{n} = {total} assignments exceed budget {budget}")
    m = phi.m
    if m == 0:
        raise ValidationError("value of an empty formula is undefined")
    var = [np.array([abs(l) - 1 for l in c], dtype=np.int64) for c in phi.clauses]
    want = [np.array([1 if l > 0 else 0 for l in c], dtype=np.int64) for c in phi.clauses]

    def chunk(lo, hi):
        d = _digits(np.arange(lo, hi, dtype=np.int64), n, 2)
        out = np.zeros(hi - lo, dtype=np.int64)
        for vi, wi in zip(var, want):
            out += (d[:, vi] == wi).any(axis=1)
        return out

    vals = _chunked(total, _threads(threads), chunk)
    s = _encode(inst.start.bits, 2)
    t = _encode(inst.end.bits, 2)
    thr, explored, path = _bottleneck(n, 2, vals, s, t)
    steps = [Assignment(tuple(int(b) for b in _digits(np.array([a]), n, 2)[0])) for a in path]
    return ExactResult(Fraction(thr, m), ReconfigSequence("sat", tuple(steps)), explored)
