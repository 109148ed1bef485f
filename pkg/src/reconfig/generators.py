"""Seeded random instances (Philox stream, platform independent)."""
from __future__ import annotations

import numpy as np

from .approx_cut import make_rng
from .errors import ValidationError
from .instances import Assignment, CnfFormula, Coloring, CutReconfigInstance, SatReconfigInstance, WeightedMultigraph
from .valuation import GridColoring


def random_graph(n: int, p: float, rng: np.random.Generator, min_edges: int = 1) -> WeightedMultigraph:
    """G(n, p) with unit weights; resampled until it has ``min_edges`` edges."""
    while True:
        edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p]
        if len(edges) >= min_edges:
            return WeightedMultigraph.from_edges(n, edges)


def random_cut_instance(n: int, k: int, p: float = 0.3, seed: int = 0, proper: bool = False) -> CutReconfigInstance:
    """Random graph plus random endpoints; ``proper`` retries for proper endpoints."""
    rng = make_rng(seed)
    g = random_graph(n, p, rng)

    def coloring():
        for _ in range(1000):
            c = [int(x) for x in rng.integers(1, k + 1, size=n)]
            if not proper or all(c[u - 1] != c[v - 1] for u, v, _ in g.edges):
                return Coloring(k, tuple(c))
        raise ValidationError("could not sample a proper coloring")

    return CutReconfigInstance(g, k, coloring(), coloring())


def random_sat_instance(n: int, m: int, k: int, seed: int = 0) -> SatReconfigInstance:
    """Random E-k clauses satisfied by two planted random endpoints."""
    if k > n:
        raise ValidationError("clause width exceeds the variable count")
    rng = make_rng(seed)
    s = [int(b) for b in rng.integers(0, 2, size=n)]
    t = [int(b) for b in rng.integers(0, 2, size=n)]
    clauses = []
    while len(clauses) < m:
        vars_ = rng.choice(np.arange(1, n + 1), size=k, replace=False)
        signs = rng.integers(0, 2, size=k)
        c = tuple(int(x) if sg else -int(x) for x, sg in zip(vars_, signs))
        ok_s = any((s[abs(l) - 1] == 1) == (l > 0) for l in c)
        ok_t = any((t[abs(l) - 1] == 1) == (l > 0) for l in c)
        if ok_s and ok_t:
            clauses.append(c)
    return SatReconfigInstance(CnfFormula(n, k, tuple(clauses)), Assignment(tuple(s)), Assignment(tuple(t)))


def random_e3_formula(n: int, m: int, seed: int = 0) -> CnfFormula:
    rng = make_rng(seed)
    clauses = []
    for _ in range(m):
        vars_ = rng.choice(np.arange(1, n + 1), size=3, replace=False)
        signs = rng.integers(0, 2, size=3)
        clauses.append(tuple(int(x) if sg else -int(x) for x, sg in zip(vars_, signs)))
    return CnfFormula(n, 3, tuple(clauses))


def random_grid(k: int, rng: np.random.Generator, style: str = "uniform") -> GridColoring:
    """uniform, striped, or near (striped with a few cells recolored)."""
    if style == "uniform":
        return GridColoring.from_array(rng.integers(1, k + 1, size=(k, k)))
    sigma = tuple(int(c) + 1 for c in rng.permutation(k))
    g = GridColoring.horizontal(k, sigma) if rng.random() < 0.5 else GridColoring.vertical(k, sigma)
    if style == "striped":
        return g
    a = g.array()
    for _ in range(int(rng.integers(1, k + 1))):
        x, y = rng.integers(0, k, size=2)
        a[x, y] = rng.integers(1, k + 1)
    return GridColoring.from_array(a)


def mixed_grid(k: int, rng: np.random.Generator) -> GridColoring:
    r = rng.random()
    style = "uniform" if r < 0.4 else ("striped" if r < 0.7 else "near")
    return random_grid(k, rng, style)


__all__ = ["random_graph", "random_cut_instance", "random_sat_instance", "random_e3_formula",
           "random_grid", "mixed_grid"]
