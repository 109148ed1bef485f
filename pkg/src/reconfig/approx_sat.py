"""Approximation for Maxmin E-k-SAT Reconfiguration via a random detour.

start -> rho -> end, each half an irredundant flip sequence in uniformly random
order (the two orders independent).  A clause with literal-truth vectors
(start, rho, end) survives a half unless every literal true before it turns
false before the first literal false before it turns true.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .approx_cut import make_rng
from .errors import ValidationError
from .instances import Assignment, ReconfigSequence, SatReconfigInstance, SequenceBuilder
from .valuation import sequence_value


@dataclass(frozen=True)
class SatAlgoConfig:
    seed: int = 0
    mode: str = "derand"


@dataclass
class SatRunResult:
    sequence: ReconfigSequence
    value: Fraction
    bound: Fraction
    root_estimate: Fraction | None
    rho: Assignment
    notes: list = field(default_factory=list)


def binom_sum(n: int, shift: int) -> Fraction:
    """Σ_j C(n, j) / (j + shift) via the closed form."""
    if n < 0:
        raise ValidationError("n must be nonnegative")
    if shift == 1:
        return Fraction(2 ** (n + 1) - 1, n + 1)
    if shift == 2:
        return Fraction(2 ** (n + 1) * n + 1, (n + 1) * (n + 2))
    raise ValidationError("shift must be 1 or 2")


def lemma_bound(k: int) -> Fraction:
    return 1 - Fraction(1, k - 1) - Fraction(1, k)


# ------------------------------------------------------------ survival

def _half_survival(n_stay: int, n_lose: int, n_gain: int) -> Fraction:
    """Uniform order over the flipping literals."""
    if n_stay:
        return Fraction(1)
    if n_gain == 0:
        return Fraction(0)
    return 1 - Fraction(1, comb(n_lose + n_gain, n_lose))


def _survival_from_types(fixed, free) -> Fraction:
    """fixed: list of (s, r, e) literal truths; free: counts n[(s, e)] with r uniform.

    Both halves use uniformly random orders.
    """
    base = [0] * 6  # stay1, lose1, gain1, stay2, lose2, gain2
    for s, r, e in fixed:
        _add(base, s, r, e)
    types = [(s, e) for (s, e), c in free.items() if c]
    total_free = sum(free.values())
    acc = Fraction(0)
    for js in itertools.product(*[range(free[t] + 1) for t in types]):
        w = 1
        cnt = list(base)
        for (s, e), j in zip(types, js):
            c = free[(s, e)]
            w *= comb(c, j)
            if j:
                _add(cnt, s, 1, e, j)
            if c - j:
                _add(cnt, s, 0, e, c - j)
        p = _half_survival(cnt[0], cnt[1], cnt[2]) * _half_survival(cnt[3], cnt[4], cnt[5])
        acc += w * p
    return acc / 2**total_free


def _add(cnt, s, r, e, times=1):
    if s and r:
        cnt[0] += times
    elif s:
        cnt[1] += times
    elif r:
        cnt[2] += times
    if r and e:
        cnt[3] += times
    elif r:
        cnt[4] += times
    elif e:
        cnt[5] += times


def clause_survival_prob(k: int, start_true, end_true) -> Fraction:
    """Exact survival probability of one width-k clause over random rho and orders."""
    st, en = tuple(int(bool(b)) for b in start_true), tuple(int(bool(b)) for b in end_true)
    if len(st) != k or len(en) != k:
        raise ValidationError(f"truth vectors must have length {k}")
    if not any(st):
        raise ValidationError("start truth vector violates the clause")
    if not any(en):
        raise ValidationError("end truth vector violates the clause")
    free: dict = {}
    for s, e in zip(st, en):
        free[(s, e)] = free.get((s, e), 0) + 1
    return _survival_from_types([], free)


def survival_closed_form(k: int, same_literal: bool) -> Fraction:
    """Single-true-literal cases written as binomial sums over j."""
    if same_literal:
        K = k - 1
        terms = (Fraction(comb(K, j), 2**K) * (Fraction(j, j + 1) ** 2 + 1) / 2 for j in range(K + 1))
    else:
        K = k - 2
        terms = (Fraction(comb(K, j), 2**K) / 4
                 * (Fraction(j, j + 1) ** 2 + 2 * Fraction(j + 1, j + 2) + 1) for j in range(K + 1))
    return sum(terms, Fraction(0))


def min_clause_survival(k: int) -> Fraction:
    """Minimum of clause_survival_prob over all satisfying truth-vector pairs.

    By monotonicity in true literals the minimum sits at single-true-literal
    vectors; by symmetry only "same literal" and "different literals" remain.
    """
    one = (1,) + (0,) * (k - 1)
    other = (0, 1) + (0,) * (k - 2)
    return min(clause_survival_prob(k, one, one), clause_survival_prob(k, one, other))


# ------------------------------------------------------------ conditional model

class _Clauses:
    """Per-clause survival given partial rho and partial flip orders."""

    def __init__(self, inst: SatReconfigInstance):
        self.phi = inst.formula
        self.s = inst.start.bits
        self.e = inst.end.bits
        n = self.phi.n
        self.rho = [None] * (n + 1)
        self.pos = [dict(), dict()]
        self.occ = [[] for _ in range(n + 1)]
        for j, c in enumerate(self.phi.clauses):
            for lit in c:
                self.occ[abs(lit)].append(j)

    @staticmethod
    def _truth(lit, bit):
        return int(bit == (1 if lit > 0 else 0))

    def _half(self, phase, lits, before, after):
        stay = any(b and a for b, a in zip(before, after))
        if stay:
            return Fraction(1)
        lose = [abs(l) for l, b, a in zip(lits, before, after) if b and not a]
        gain = [abs(l) for l, b, a in zip(lits, before, after) if a and not b]
        if not gain:
            return Fraction(0)
        pos = self.pos[phase]
        gp = [pos[x] for x in gain if x in pos]
        lp = [pos[x] for x in lose if x in pos]
        lu = sum(1 for x in lose if x not in pos)
        if gp:
            # a placed gainer exists: all losers must be placed before it
            all_lose_first = lu == 0 and all(p < min(gp) for p in lp)
            return Fraction(0) if all_lose_first else Fraction(1)
        gu = len(gain)
        return 1 - Fraction(1, comb(lu + gu, lu))

    def clause(self, j) -> Fraction:
        lits = self.phi.clauses[j]
        st = [self._truth(l, self.s[abs(l) - 1]) for l in lits]
        en = [self._truth(l, self.e[abs(l) - 1]) for l in lits]
        rh = [None if self.rho[abs(l)] is None else self._truth(l, self.rho[abs(l)]) for l in lits]
        if not self.pos[0] and not self.pos[1]:
            fixed = [(s, r, e) for s, r, e in zip(st, rh, en) if r is not None]
            free: dict = {}
            for s, r, e in zip(st, rh, en):
                if r is None:
                    free[(s, e)] = free.get((s, e), 0) + 1
            return _survival_from_types(fixed, free)
        if any(r is None for r in rh):
            raise AssertionError("orders are only decided after rho is fixed")
        return self._half(0, lits, st, rh) * self._half(1, lits, rh, en)

    def local(self, x):
        return sum((self.clause(j) for j in self.occ[x]), Fraction(0))

    def total(self):
        return sum((self.clause(j) for j in range(self.phi.m)), Fraction(0))


def _derandomize(inst, check):
    cl = _Clauses(inst)
    n = inst.formula.n
    root = cur = cl.total()
    for x in range(1, n + 1):
        base = cl.local(x)
        best = None
        for b in (0, 1):
            cl.rho[x] = b
            val = cl.local(x)
            if best is None or val > best[0]:
                best = (val, b)
        cl.rho[x] = best[1]
        new = cur - base + best[0]
        if check and new < cur:
            raise AssertionError("estimator decreased while fixing rho")
        cur = new
    rho = [cl.rho[x] for x in range(1, n + 1)]
    orders = []
    for phase, (a, b) in enumerate(((inst.start.bits, rho), (rho, inst.end.bits))):
        remaining = [x for x in range(1, n + 1) if a[x - 1] != b[x - 1]]
        placed = []
        while remaining:
            best = None
            for x in remaining:
                base = cl.local(x)
                cl.pos[phase][x] = len(placed)
                val = cl.local(x) - base
                del cl.pos[phase][x]
                if best is None or val > best[0]:
                    best = (val, x)
            gain, x = best
            if check and gain < 0:
                raise AssertionError("estimator decreased while ordering")
            cl.pos[phase][x] = len(placed)
            placed.append(x)
            remaining.remove(x)
            cur += gain
        orders.append(placed)
    return rho, orders, root, cur


def run_approx_sat(inst: SatReconfigInstance, cfg: SatAlgoConfig = SatAlgoConfig(),
                   check: bool = True) -> SatRunResult:
    phi = inst.formula
    if phi.k == 0:
        raise ValidationError("mixed-width formula: an E-k formula is required")
    if phi.k < 3:
        raise ValidationError("clause width must be at least 3")
    if phi.m == 0:
        raise ValidationError("value of an empty formula is undefined")
    if cfg.mode not in ("random", "derand"):
        raise ValidationError(f"unknown mode {cfg.mode!r}")
    inst.check_endpoints()
    n = phi.n
    root = None
    if cfg.mode == "random":
        rng = make_rng(cfg.seed)
        rho = [int(b) for b in rng.integers(0, 2, size=n)]
        orders = []
        for a, b in ((inst.start.bits, rho), (rho, inst.end.bits)):
            diff = [x for x in range(1, n + 1) if a[x - 1] != b[x - 1]]
            orders.append([int(x) for x in rng.permutation(diff)] if diff else [])
    else:
        rho, orders, root_sum, _ = _derandomize(inst, check)
        root = root_sum / phi.m
    b = SequenceBuilder(inst.start)
    for x in orders[0]:
        b.set(x, rho[x - 1])
    for x in orders[1]:
        b.set(x, inst.end.bits[x - 1])
    seq = b.build()
    value = sequence_value(inst, seq)
    if check and root is not None and value < root:
        raise AssertionError("derandomized value fell below the root estimator")
    return SatRunResult(seq, value, lemma_bound(phi.k), root, Assignment(tuple(rho)))


def approx_sat_reconfig(inst: SatReconfigInstance, cfg: SatAlgoConfig = SatAlgoConfig()) -> ReconfigSequence:
    return run_approx_sat(inst, cfg).sequence
