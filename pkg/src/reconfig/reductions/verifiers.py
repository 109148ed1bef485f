"""Explicit finite verifiers, the AND/OR-graph verifier, and the Horn CNF builder."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

from ..errors import BudgetExceeded, ParseError, ValidationError
from ..instances import Assignment, CnfFormula, SatReconfigInstance, _lines
from .certificate import ReductionCertificate


@dataclass(frozen=True)
class Check:
    queries: tuple  # 1-based proof positions
    accepted: frozenset  # of bit tuples aligned with queries

    def accepts(self, proof: Assignment) -> bool:
        return tuple(proof.bits[i - 1] for i in self.queries) in self.accepted


@dataclass(frozen=True)
class ExplicitVerifier:
    proof_len: int
    q: int
    checks: tuple
    f_free_bits: float
    degree: int

    def __post_init__(self):
        uses = [0] * (self.proof_len + 1)
        for idx, ch in enumerate(self.checks):
            if len(ch.queries) != self.q or len(set(ch.queries)) != self.q:
                raise ValidationError(f"check {idx + 1}: needs {self.q} distinct queries")
            for i in ch.queries:
                if not 1 <= i <= self.proof_len:
                    raise ValidationError(f"check {idx + 1}: query {i} out of range")
                uses[i] += 1
            for view in ch.accepted:
                if len(view) != self.q or any(b not in (0, 1) for b in view):
                    raise ValidationError(f"check {idx + 1}: malformed accepted view")
            if ch.accepted and math.log2(len(ch.accepted)) > self.f_free_bits + 1e-12:
                raise ValidationError(f"check {idx + 1}: more accepted views than 2^f allows")
        if max(uses, default=0) > self.degree:
            raise ValidationError("some position is queried more often than the degree allows")

    @classmethod
    def build(cls, proof_len: int, checks) -> "ExplicitVerifier":
        """Infer q, free bits and degree from the checks."""
        checks = tuple(checks)
        q = len(checks[0].queries) if checks else 0
        most = max((len(c.accepted) for c in checks), default=1)
        f = math.log2(most) if most else 0.0
        uses = [0] * (proof_len + 1)
        for c in checks:
            for i in c.queries:
                uses[i] += 1
        return cls(proof_len, q, checks, f, max(uses, default=0))


# ---------------------------------------------------------------- AND/OR graphs

AND, OR, PROTECTED_OR = "AND", "OR", "PROTECTED_OR"
RED, BLUE = "red", "blue"
_WEIGHT = {RED: 1, BLUE: 2}


@dataclass(frozen=True)
class Node:
    kind: str
    forbidden: tuple | None = None  # two link indices (1-based) for PROTECTED_OR


@dataclass(frozen=True)
class Link:
    """Orientation bit 1 points into ends[0]; bit 0 points into ends[1] (or away)."""
    ends: tuple  # (a,) dangling or (a, b); 1-based node indices
    color: str


@dataclass(frozen=True)
class AndOrGraph:
    nodes: tuple
    links: tuple

    def incident(self, node: int) -> list:
        return [i for i, l in enumerate(self.links, start=1) if node in l.ends]


def _inward(link: Link, node: int, bit: int) -> bool:
    if link.ends[0] == node:
        return bit == 1
    return bit == 0


def node_accepted_views(g: AndOrGraph, node: int) -> tuple[tuple, frozenset]:
    nd = g.nodes[node - 1]
    inc = g.incident(node)
    links = [g.links[i - 1] for i in inc]
    colors = sorted(l.color for l in links)
    if len(inc) != 3:
        raise ValidationError(f"node {node}: needs 3 incident links, has {len(inc)}")
    if nd.kind == AND and colors != [BLUE, RED, RED]:
        raise ValidationError(f"node {node}: AND needs two red and one blue link")
    if nd.kind in (OR, PROTECTED_OR) and colors != [BLUE] * 3:
        raise ValidationError(f"node {node}: OR needs three blue links")
    if nd.kind not in (AND, OR, PROTECTED_OR):
        raise ValidationError(f"node {node}: unknown kind {nd.kind!r}")
    if nd.kind == PROTECTED_OR:
        if nd.forbidden is None or len(set(nd.forbidden)) != 2 or not set(nd.forbidden) <= set(inc):
            raise ValidationError(f"node {node}: forbidden pair must be two incident links")
    acc = set()
    for view in product((0, 1), repeat=3):
        inn = [_inward(l, node, b) for l, b in zip(links, view)]
        weight = sum(_WEIGHT[l.color] for l, i in zip(links, inn) if i)
        if weight < 2:
            continue
        if nd.kind == PROTECTED_OR:
            a, b = (inc.index(x) for x in nd.forbidden)
            if inn[a] and inn[b]:
                continue
        acc.add(view)
    return tuple(inc), frozenset(acc)


def ncl_verifier(g: AndOrGraph) -> ExplicitVerifier:
    """One check per node reading its three incident links."""
    for i, l in enumerate(g.links, start=1):
        if len(l.ends) not in (1, 2) or len(set(l.ends)) != len(l.ends):
            raise ValidationError(f"link {i}: needs one or two distinct endpoints")
        if l.color not in _WEIGHT:
            raise ValidationError(f"link {i}: unknown color {l.color!r}")
    checks = [Check(*node_accepted_views(g, v)) for v in range(1, len(g.nodes) + 1)]
    return ExplicitVerifier.build(len(g.links), checks)


# ---------------------------------------------------------------- Horn CNF

def horn_cnf(v: ExplicitVerifier, lam: int, start: Assignment, end: Assignment,
             budget: int = 10**6):
    """Forbid every partial proof on which the first lam-1 checks accept and the last rejects."""
    if lam < 2:
        raise ValidationError("lambda must be at least 2")
    for name, a in (("start", start), ("end", end)):
        if len(a) != v.proof_len:
            raise ValidationError(f"{name} has the wrong length")
        for idx, ch in enumerate(v.checks, start=1):
            if not ch.accepts(a):
                raise ValidationError(f"{name} is rejected by check {idx}")
    C = len(v.checks)
    tuples_total = math.perm(C, lam)
    if tuples_total > budget:
        raise BudgetExceeded(f"{tuples_total} check tuples exceed budget {budget}")
    q = v.q
    all_views = list(product((0, 1), repeat=q))
    clauses = []
    disjoint = 0
    for tup in permutations(range(C), lam):
        sets = [set(v.checks[i].queries) for i in tup]
        if sum(len(s) for s in sets) != len(set().union(*sets)):
            continue
        disjoint += 1
        chks = [v.checks[i] for i in tup]
        heads = [sorted(c.accepted) for c in chks[:-1]]
        last = [w for w in all_views if w not in chks[-1].accepted]
        positions = [p for c in chks for p in c.queries]
        for parts in product(*heads, last):
            bits = [b for part in parts for b in part]
            clauses.append(tuple(-p if b else p for p, b in zip(positions, bits)))
    phi = CnfFormula(v.proof_len, q * lam, tuple(clauses))
    out = SatReconfigInstance(phi, start, end)
    out.check_endpoints()
    f = v.f_free_bits
    per_tuple = 2 ** (f * (lam - 1)) * (2**q - 2**f)
    cert = ReductionCertificate(
        "horn-cnf",
        {"proof_len": v.proof_len, "checks": C, "q": q, "free_bits": round(f, 6), "degree": v.degree},
        {"variables": phi.n, "clauses": phi.m, "width": phi.k},
    )
    cert.params.update({
        "lambda": lam,
        "disjoint_tuples": disjoint,
        "clauses_per_tuple_bound": round(per_tuple, 6),
        "delta": "eps (1-eps)^(lambda-1) / (4 * 2^(f(lambda-1)+q))",
        "full_scale_q": "ceil(sqrt(f k))",
        "full_scale_lambda": "ceil(sqrt(k / f))",
    })
    cert.warnings.append("the proof-length condition relating n, degree and lambda is left implicit")
    return out, cert


def horn_delta(eps, f: float, q: int, lam: int) -> float:
    """Soundness parameter of the Horn reduction (float: f is usually irrational)."""
    eps = float(eps)
    return eps * (1 - eps) ** (lam - 1) / (4 * 2 ** (f * (lam - 1) + q))


def tuple_violations(v: ExplicitVerifier, phi: CnfFormula, lam: int, proof: Assignment) -> list:
    """Violated-clause counts per disjoint tuple, in emission order."""
    q = v.q
    out = []
    j = 0
    all_views = 2**q
    for tup in permutations(range(len(v.checks)), lam):
        sets = [set(v.checks[i].queries) for i in tup]
        if sum(len(s) for s in sets) != len(set().union(*sets)):
            continue
        chks = [v.checks[i] for i in tup]
        count = 1
        for c in chks[:-1]:
            count *= len(c.accepted)
        count *= all_views - len(chks[-1].accepted)
        block = phi.clauses[j:j + count]
        j += count
        bad = sum(1 for c in block if not any((proof.bits[abs(l) - 1] == 1) == (l > 0) for l in c))
        out.append(bad)
    return out


# ---------------------------------------------------------------- file format

def parse_andor(text) -> tuple:
    """``p andor <nodes> <links>``; ``n AND|OR|POR [a b]``; ``l a b red|blue`` (b = 0: dangling); ``s``/``t`` bitstrings."""
    header = None
    nodes, links = [], []
    start = end = None
    kinds = {"AND": AND, "OR": OR, "POR": PROTECTED_OR}
    for no, line in _lines(text):
        tok = line.split()
        if tok[0] == "p":
            if len(tok) != 4 or tok[1] != "andor":
                raise ParseError("malformed header, expected 'p andor <nodes> <links>'", no)
            header = (int(tok[2]), int(tok[3]))
        elif header is None:
            raise ParseError("content before header", no)
        elif tok[0] == "n":
            if len(tok) < 2 or tok[1] not in kinds:
                raise ParseError("node line must be 'n AND|OR|POR [a b]'", no)
            forb = None
            if tok[1] == "POR":
                if len(tok) != 4:
                    raise ParseError("protected OR needs its forbidden link pair", no)
                forb = (int(tok[2]), int(tok[3]))
            nodes.append(Node(kinds[tok[1]], forb))
        elif tok[0] == "l":
            if len(tok) != 4 or tok[3] not in _WEIGHT:
                raise ParseError("link line must be 'l <a> <b> red|blue'", no)
            a, b = int(tok[1]), int(tok[2])
            links.append(Link((a,) if b == 0 else (a, b), tok[3]))
        elif tok[0] in ("s", "t"):
            bits = "".join(tok[1:])
            if any(ch not in "01" for ch in bits):
                raise ParseError("expected a bitstring", no)
            a = Assignment.from_string(bits)
            if tok[0] == "s":
                start = a
            else:
                end = a
        else:
            raise ParseError(f"unknown line tag {tok[0]!r}", no)
    if header is None:
        raise ParseError("missing header")
    if (len(nodes), len(links)) != header:
        raise ParseError("node or link count does not match the header")
    if start is None or end is None:
        raise ParseError("missing start ('s') or end ('t') line")
    for l in links:
        if any(not 1 <= e <= len(nodes) for e in l.ends):
            raise ParseError("link endpoint out of range")
    return AndOrGraph(tuple(nodes), tuple(links)), start, end
