"""Gap reductions between SAT reconfiguration problems."""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, product

from ..errors import ValidationError
from ..instances import Assignment, CnfFormula, SatReconfigInstance, SequenceBuilder, literal_true
from .certificate import Claim, ReductionCertificate


def horn_example(n: int) -> SatReconfigInstance:
    """All exactly-one-positive width-3 clauses on n variables, 0ⁿ ↔ 1ⁿ."""
    if n < 3 or n % 3:
        raise ValidationError("n must be a positive multiple of 3")
    clauses = []
    for trip in combinations(range(1, n + 1), 3):
        for pos in trip:
            clauses.append(tuple(x if x == pos else -x for x in trip))
    return SatReconfigInstance(CnfFormula(n, 3, tuple(clauses)),
                               Assignment((0,) * n), Assignment((1,) * n))


def _summary(inst: SatReconfigInstance) -> dict:
    phi = inst.formula
    return {"variables": phi.n, "clauses": phi.m, "width": phi.k}


# ---------------------------------------------------------------- width reduction

def _chain_sets(lits, k):
    """p sets of k-2 literals covering ``lits``; first and last get one more."""
    w = len(lits)
    p = math.ceil(Fraction(3 * w, k))
    sets = [[lits[(i * (k - 2) + t) % w] for t in range(k - 2)] for i in range(p)]
    for s in (sets[0], sets[-1]):
        extra = next(l for l in lits if l not in s)
        s.append(extra)
    return sets


def _chain_clauses(sets, zs):
    p = len(sets)
    out = [tuple([-zs[0]] + sets[0])]
    for i in range(1, p - 1):
        out.append(tuple([-zs[i], zs[i - 1]] + sets[i]))
    out.append(tuple([zs[p - 2]] + sets[p - 1]))
    return out


def _chain_values(sets, a: Assignment):
    """z_i = 0 for i < i*, else 1, where S_{i*} is the first set made true by a."""
    istar = next(i for i, s in enumerate(sets) if any(literal_true(l, a) for l in s))
    return [0 if i < istar else 1 for i in range(len(sets) - 1)]


def reduce_clause_width(inst: SatReconfigInstance, k_target: int):
    phi = inst.formula
    k = int(k_target)
    if k < 3:
        raise ValidationError("k_target must be at least 3")
    if phi.k == 0 or phi.k <= k:
        raise ValidationError(f"input width must be a fixed width above {k}")
    inst.check_endpoints()
    rho = Fraction(phi.k, k)
    p = math.ceil(3 * rho)
    fresh = p - 1
    n2 = phi.n + phi.m * fresh
    clauses = []
    z_start, z_end = [], []
    for j, c in enumerate(phi.clauses):
        zs = [phi.n + j * fresh + i for i in range(1, fresh + 1)]
        sets = _chain_sets(list(c), k)
        clauses.extend(_chain_clauses(sets, zs))
        z_start.extend(_chain_values(sets, inst.start))
        z_end.extend(_chain_values(sets, inst.end))
    out = SatReconfigInstance(
        CnfFormula(n2, k, tuple(clauses)),
        Assignment(inst.start.bits + tuple(z_start)),
        Assignment(inst.end.bits + tuple(z_end)),
    )
    out.check_endpoints()
    cert = ReductionCertificate("rho", _summary(inst), _summary(out))
    cert.params.update({"rho": rho, "p": p, "clauses_per_input_clause": p,
                        "fresh_per_input_clause": fresh, "eps_out": "eps_in / (3 rho)"})
    return out, cert


# ---------------------------------------------------------------- NP gap

def _find_satisfying(phi: CnfFormula, limit: int = 22):
    if phi.n > limit:
        return None
    for bits in product((0, 1), repeat=phi.n):
        a = Assignment(bits)
        if phi.first_violated(a) is None:
            return a
    return None


def _gadget(k, n):
    """Auxiliary clause templates, aux start and end values, and flip order."""
    y = n + 1
    if k == 3:
        z1, z2 = n + 2, n + 3
        groups = [(-y, -z1, z2), (-y, z1, -z2)]
        return groups, (1, 1, 1), (1, 0, 0), [y, z1, z2, y]
    z1, z2, z3 = n + 2, n + 3, n + 4
    groups = [(-y, -z1, -z2, z3), (-y, -z1, z2, -z3), (-y, z1, -z2, -z3)]
    return groups, (1, 1, 1, 1), (1, 0, 0, 0), [y, z1, z2, z3, y]


def np_gap_reduction(phi: CnfFormula, k_target: int, delta=Fraction(1, 8),
                     satisfying: Assignment | None = None):
    """From an E3 formula to a k-SAT reconfiguration instance.

    A satisfying assignment of ``phi`` (searched for when n is small) yields
    the completeness witness.
    """
    k = int(k_target)
    if k < 3:
        raise ValidationError("k_target must be at least 3")
    if phi.k != 3:
        raise ValidationError("input must be an E3 formula")
    n, m = phi.n, phi.m
    if satisfying is None:
        satisfying = _find_satisfying(phi)
    elif phi.first_violated(satisfying) is not None:
        raise ValidationError("the supplied assignment does not satisfy phi")
    cert = ReductionCertificate("np", {"variables": n, "clauses": m, "width": 3}, {})
    if k >= 5:
        K = k - 3
        ys = [n + i for i in range(1, K + 1)]
        clauses = []
        for c in phi.clauses:
            for yi in ys:
                clauses.append(tuple(c) + (yi,) + tuple(-y for y in ys if y != yi))
        psi = CnfFormula(n + K, k, tuple(clauses))
        start = Assignment((1,) * (n + K))
        end = Assignment((0,) * (n + K))
        aux_order = [(y, 0) for y in ys]
        cert.params.update({"K": K, "clauses_expected": K * m})
    else:
        groups, a_start, a_end, flips = _gadget(k, n)
        copies = max(1, math.ceil(Fraction(delta) * m))
        y = n + 1
        clauses = [tuple(c) + (y,) for c in phi.clauses]
        for g in groups:
            clauses.extend([g] * copies)
        n_aux = len(a_start)
        psi = CnfFormula(n + n_aux, 0 if k == 3 else 4, tuple(clauses))
        start = Assignment((1,) * n + a_start)
        end = Assignment((0,) * n + a_end)
        cur = dict(zip(range(n + 1, n + n_aux + 1), a_start))
        aux_order = []
        for v in flips:
            cur[v] ^= 1
            aux_order.append((v, cur[v]))
        cert.params.update({"delta": Fraction(delta), "m_aux": copies, "gadget_groups": len(groups)})
        if k == 3:
            cert.warnings.append("output has mixed widths 3 and 4")
    out = SatReconfigInstance(psi, start, end)
    out.check_endpoints()
    cert.output_summary.update(_summary(out))
    if satisfying is not None:
        b = SequenceBuilder(start)
        for x in range(1, n + 1):
            b.set(x, satisfying[x])
        for v, val in aux_order:
            b.set(v, val)
        for x in range(1, n + 1):
            b.set(x, 0)
        val = cert.attach_witness(out, b.build())
        cert.claims.append(Claim("completeness witness has value 1", Fraction(1), val == 1))
    else:
        cert.warnings.append("no satisfying assignment supplied or found: no completeness witness")
    return out, cert
