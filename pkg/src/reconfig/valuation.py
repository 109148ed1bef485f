"""Exact values of configurations, sequences, grid stripes and testers."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import ValidationError
from .instances import (
    Assignment,
    Coloring,
    CnfFormula,
    CutReconfigInstance,
    ReconfigSequence,
    SatReconfigInstance,
    WeightedMultigraph,
)


def cut_value(graph: WeightedMultigraph, f: Coloring) -> Fraction:
    if not graph.edges:
        raise ValidationError("value of an edgeless graph is undefined")
    if len(f) != graph.n:
        raise ValidationError(f"coloring has length {len(f)}, graph has {graph.n} vertices")
    c = f.colors
    good = sum((w for u, v, w in graph.edges if c[u - 1] != c[v - 1]), Fraction(0))
    return good / graph.total_weight


def sat_value(formula: CnfFormula, a: Assignment) -> Fraction:
    if formula.m == 0:
        raise ValidationError("value of an empty formula is undefined")
    return Fraction(formula.num_satisfied(a), formula.m)


def sequence_value(inst, seq: ReconfigSequence) -> Fraction:
    """Minimum value along ``seq`` after validating it against ``inst``."""
    seq.validate_for(inst)
    if isinstance(inst, CutReconfigInstance):
        return min(cut_value(inst.graph, s) for s in seq.steps)
    return min(sat_value(inst.formula, s) for s in seq.steps)


# ------------------------------------------------------------------ grids

@dataclass(frozen=True)
class GridColoring:
    """f: [k]^2 -> [k] stored as ``cells[x-1][y-1]``."""
    k: int
    cells: tuple

    def __post_init__(self):
        cells = tuple(tuple(int(c) for c in row) for row in self.cells)
        if len(cells) != self.k or any(len(r) != self.k for r in cells):
            raise ValidationError(f"grid must be {self.k}x{self.k}")
        for row in cells:
            for c in row:
                if not 1 <= c <= self.k:
                    raise ValidationError(f"grid color {c} outside 1..{self.k}")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_array(cls, arr) -> "GridColoring":
        arr = np.asarray(arr)
        return cls(arr.shape[0], tuple(map(tuple, arr.tolist())))

    @classmethod
    def horizontal(cls, k: int, sigma=None) -> "GridColoring":
        """f(x, y) = sigma(y)."""
        sigma = sigma or tuple(range(1, k + 1))
        return cls(k, tuple(tuple(sigma) for _ in range(k)))

    @classmethod
    def vertical(cls, k: int, sigma=None) -> "GridColoring":
        """f(x, y) = sigma(x)."""
        sigma = sigma or tuple(range(1, k + 1))
        return cls(k, tuple((sigma[x],) * k for x in range(k)))

    def array(self) -> np.ndarray:
        return np.array(self.cells, dtype=np.int64)

    def transpose(self) -> "GridColoring":
        return GridColoring(self.k, tuple(zip(*self.cells)))

    def flat(self) -> tuple:
        """Colors in position order (x-1)*k + (y-1)."""
        return tuple(c for row in self.cells for c in row)


def grid_position(k: int, x: int, y: int) -> int:
    """0-based tester position of cell (x, y)."""
    return (x - 1) * k + (y - 1)


@dataclass(frozen=True)
class StripeReport:
    dist_h: Fraction
    dist_v: Fraction
    eps: Fraction
    dec: int
    sigma: tuple


def _counts(g: GridColoring):
    """R[y, c] = #{x : f(x,y)=c}, C[x, c] = #{y : f(x,y)=c} (0-based)."""
    a = g.array() - 1
    k = g.k
    R = np.zeros((k, k), dtype=np.int64)
    C = np.zeros((k, k), dtype=np.int64)
    xs, ys = np.indices((k, k))
    np.add.at(R, (ys.ravel(), a.ravel()), 1)
    np.add.at(C, (xs.ravel(), a.ravel()), 1)
    return R, C


def _assignment_min(counts: np.ndarray) -> tuple[int, tuple]:
    k = counts.shape[0]
    cost = k - counts
    rows, cols = linear_sum_assignment(cost)
    total = int(cost[rows, cols].sum())
    sigma = [0] * k
    for r, c in zip(rows, cols):
        sigma[r] = int(c) + 1
    return total, tuple(sigma)


def stripe_report(g: GridColoring) -> StripeReport:
    if g.k < 2:
        raise ValidationError("stripe distance needs k >= 2")
    R, C = _counts(g)
    kk = g.k * g.k
    th, sh = _assignment_min(R)
    tv, sv = _assignment_min(C)
    dh, dv = Fraction(th, kk), Fraction(tv, kk)
    dec = 1 if dh <= dv else 2
    return StripeReport(dh, dv, min(dh, dv), dec, sh if dec == 1 else sv)


def stripe_reject_prob(g: GridColoring) -> Fraction:
    """Pr[f(X1,Y1) = f(X2,Y2)] over uniform X1 != X2, Y1 != Y2."""
    k = g.k
    if k < 2:
        raise ValidationError("stripe test needs k >= 2")
    R, C = _counts(g)
    S = R.sum(axis=0)
    mono = int((S * S - (C * C).sum(axis=0) - (R * R).sum(axis=0) + S).sum())
    return Fraction(mono, k * k * (k - 1) * (k - 1))


# ------------------------------------------------------------------ testers

def tester_accept_prob(t, cfg) -> Fraction:
    """Accept probability of a pair tester on a color vector.

    ``cfg`` may be a Coloring or any sequence indexed by 0-based position.
    """
    cols = cfg.colors if isinstance(cfg, Coloring) else tuple(cfg)
    if len(cols) < t.positions:
        raise ValidationError(f"configuration has {len(cols)} positions, tester needs {t.positions}")
    return sum((p for i, j, p in t.pairs if cols[i] != cols[j]), Fraction(0))


def explicit_verifier_accept_prob(v, proof: Assignment) -> Fraction:
    if len(proof) != v.proof_len:
        raise ValidationError(f"proof has length {len(proof)}, verifier expects {v.proof_len}")
    if not v.checks:
        raise ValidationError("verifier has no checks")
    bits = proof.bits
    ok = sum(1 for ch in v.checks if tuple(bits[i - 1] for i in ch.queries) in ch.accepted)
    return Fraction(ok, len(v.checks))
