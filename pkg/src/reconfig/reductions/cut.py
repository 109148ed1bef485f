"""Gap reductions between cut reconfiguration problems."""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

import numpy as np

from ..errors import ValidationError
from ..instances import Coloring, CutReconfigInstance, ReconfigSequence, SequenceBuilder, WeightedMultigraph
from ..valuation import cut_value, sequence_value
from .certificate import Claim, ReductionCertificate
from .testers import build_edge_tester, edge_tester_z


def _merge(n: int, weighted) -> WeightedMultigraph:
    acc: dict = {}
    for u, v, w in weighted:
        key = (min(u, v), max(u, v))
        acc[key] = acc.get(key, Fraction(0)) + w
    return WeightedMultigraph(n, tuple((u, v, w) for (u, v), w in sorted(acc.items()) if w))


def _max_degree_share(g: WeightedMultigraph) -> Fraction:
    return max(g.weighted_degrees()[1:]) / g.total_weight


def _source_eps(inst, source_sequence):
    if source_sequence is None:
        return None
    return 1 - sequence_value(inst, source_sequence)


def _summary(inst: CutReconfigInstance) -> dict:
    return {"vertices": inst.graph.n, "edges": inst.graph.m, "k": inst.k}


def _need_k(inst, k, what):
    if inst.k != k:
        raise ValidationError(f"{what} expects a {k}-coloring instance, got k={inst.k}")


# ---------------------------------------------------------------- 2 -> k (grids)

def reduce_2cut_to_kcut(inst: CutReconfigInstance, k_target: int, rho=Fraction(1),
                        source_sequence: ReconfigSequence | None = None,
                        eps_s=None):
    """Each vertex becomes a k×k grid; each edge runs the edge tester on f'(v)∘f'(w)ᵀ."""
    _need_k(inst, 2, "reduce_2cut_to_kcut")
    k = int(k_target)
    if k < 3:
        raise ValidationError("k_target must be at least 3")
    rho = Fraction(rho)
    Z = edge_tester_z(rho)
    G = inst.graph
    W = G.total_weight
    kk = k * k
    tester = build_edge_tester(k, rho)

    def vid(v, x, y):
        return (v - 1) * kk + (x - 1) * k + (y - 1) + 1

    def position_vertex(v, w, p):
        if p < kk:
            x, y = divmod(p, k)
            return vid(v, x + 1, y + 1)
        x, y = divmod(p - kk, k)
        return vid(w, y + 1, x + 1)  # g = f'(w) transposed

    weighted = []
    for v, w, wt in G.edges:
        share = wt / W
        for i, j, p in tester.pairs:
            weighted.append((position_vertex(v, w, i), position_vertex(v, w, j), share * p))
    H = _merge(G.n * kk, weighted)

    def encode(f: Coloring) -> Coloring:
        cols = [0] * (G.n * kk)
        for v in range(1, G.n + 1):
            for x in range(1, k + 1):
                for y in range(1, k + 1):
                    cols[vid(v, x, y) - 1] = y if f[v] == 1 else x
        return Coloring(k, tuple(cols))

    out = CutReconfigInstance(H, k, encode(inst.start), encode(inst.end))
    delta = _max_degree_share(G)
    cert = ReductionCertificate("crazy", _summary(inst), _summary(out))
    cert.params.update({"k": k, "rho": rho, "Z": Z, "max_degree_share": delta,
                        "delta_c": "(1 + (eps_c + eps_s)/2) / (2Z)",
                        "delta_s": "(1 + eps_s) / (2Z)"})
    cert.warnings.append("soundness constants are proven only for k_target >= 1000 and rho = 1e-8")
    eps_c = _source_eps(inst, source_sequence)
    if eps_c is not None:
        b = SequenceBuilder(encode(source_sequence.steps[0]))
        prev = source_sequence.steps[0]
        for f in source_sequence.steps[1:]:
            for v in range(1, G.n + 1):
                if f[v] != prev[v]:
                    for x in range(1, k + 1):
                        for y in range(1, k + 1):
                            b.set(vid(v, x, y), y if f[v] == 1 else x)
            prev = f
        val = cert.attach_witness(out, b.build())
        bound = 1 - (1 + eps_c) / (2 * Z * k) - delta
        cert.params["eps_c"] = eps_c
        cert.claims.append(Claim("witness value >= 1 - (1+eps_c)/(2Zk) - max_degree_share", bound, val >= bound))
        if eps_s is not None:
            eps_s = Fraction(eps_s)
            cert.params["eps_s"] = eps_s
            dc = (1 + (eps_c + eps_s) / 2) / (2 * Z)
            cert.params["delta_c_value"] = dc
            cert.params["delta_s_value"] = (1 + eps_s) / (2 * Z)
            applicable = eps_s > eps_c and G.m > 4 * delta * G.m * Z * k / (eps_s - eps_c)
            cert.claims.append(Claim("witness value >= 1 - delta_c / k", 1 - dc / k,
                                     (val >= 1 - dc / k) if applicable else None))
        else:
            cert.claims.append(Claim("delta_c completeness bound (needs eps_s and large |E|)", None, None))
    return out, cert


# ---------------------------------------------------------------- 6 -> 2

ENC = {
    1: (1, 1, 2, 2),
    2: (1, 2, 1, 2),
    3: (1, 2, 2, 1),
    4: (2, 1, 1, 2),
    5: (2, 1, 2, 1),
    6: (2, 2, 1, 1),
}
_DEC = {v: c for c, v in ENC.items()}


def enc(alpha: int) -> tuple:
    return ENC[alpha]


def dec(bits) -> int | None:
    """Inverse of enc; None for the 10 words that are not codewords."""
    return _DEC.get(tuple(bits))


def reduce_6cut_to_2cut(inst: CutReconfigInstance, source_sequence: ReconfigSequence | None = None):
    _need_k(inst, 6, "reduce_6cut_to_2cut")
    G = inst.graph
    W = G.total_weight

    def vid(v, i):
        return 4 * (v - 1) + i

    inner = list(combinations(range(1, 5), 2))
    weighted = []
    for v, w, wt in G.edges:
        share = wt / W
        for a in (v, w):
            for i, j in inner:
                weighted.append((vid(a, i), vid(a, j), share * Fraction(4, 9) / 6))
        for i in range(1, 5):
            weighted.append((vid(v, i), vid(w, i), share * Fraction(1, 9) / 4))
    H = _merge(4 * G.n, weighted)

    def encode(f):
        return Coloring(2, tuple(b for v in range(1, G.n + 1) for b in ENC[f[v]]))

    out = CutReconfigInstance(H, 2, encode(inst.start), encode(inst.end))
    cert = ReductionCertificate("6to2", _summary(inst), _summary(out))
    cert.params.update({"delta_c": "(19 + eps_c/2) / 54", "delta_s": "(19 + eps_s) / 54",
                        "max_degree_share": _max_degree_share(G)})
    eps_c = _source_eps(inst, source_sequence)
    if eps_c is not None:
        b = SequenceBuilder(encode(source_sequence.steps[0]))
        prev = source_sequence.steps[0]
        for f in source_sequence.steps[1:]:
            for v in range(1, G.n + 1):
                if f[v] != prev[v]:
                    for i, bit in enumerate(ENC[f[v]], start=1):
                        b.set(vid(v, i), bit)
            prev = f
        val = cert.attach_witness(out, b.build())
        bound = Fraction(35, 54) - 3 * eps_c / 54 - _max_degree_share(G)
        cert.params["eps_c"] = eps_c
        cert.claims.append(Claim("witness value >= (35 - 3 eps_c)/54 - max_degree_share", bound, val >= bound))
    return out, cert


# ---------------------------------------------------------------- expander

def _mobius_ladder(n: int) -> WeightedMultigraph:
    edges = set()
    for i in range(n):
        edges.add(tuple(sorted((i, (i + 1) % n))))
    for i in range(n // 2):
        edges.add((i, i + n // 2))
    return WeightedMultigraph.from_edges(n, [(u + 1, v + 1) for u, v in sorted(edges)])


def edge_expansion_exact(g: WeightedMultigraph) -> Fraction:
    """min over 0 < |S| <= n/2 of (weight leaving S) / |S|, by enumeration."""
    n = g.n
    if n > 24:
        raise ValidationError("exhaustive expansion limited to n <= 24")
    masks = np.arange(1, 2**n, dtype=np.int64)
    size = np.zeros(masks.shape, dtype=np.int64)
    for i in range(n):
        size += (masks >> i) & 1
    keep = size <= n // 2
    masks, size = masks[keep], size[keep]
    ints, L = g.integer_weights()
    cut = np.zeros(masks.shape, dtype=np.int64)
    for (u, v, _), w in zip(g.edges, ints):
        cut += (((masks >> (u - 1)) ^ (masks >> (v - 1))) & 1) * w
    best = None
    for s in range(1, n // 2 + 1):
        sel = cut[size == s]
        if sel.size:
            val = Fraction(int(sel.min()), s * L)
            best = val if best is None else min(best, val)
    return best


def expander_3regular(n: int):
    """Cycle plus diametric chords (Möbius ladder); K4 at n = 4.

    Expansion is exact for n <= 20, else the Cheeger lower bound λ₂/2
    rounded down to a rational with a safety margin.
    """
    if n % 2 or n < 4:
        raise ValidationError("a 3-regular graph needs an even n >= 4")
    g = _mobius_ladder(n)
    if n <= 20:
        return g, edge_expansion_exact(g)
    Lap = 3 * np.eye(n)
    for u, v, _ in g.edges:
        Lap[u - 1, v - 1] -= 1
        Lap[v - 1, u - 1] -= 1
    lam2 = float(np.linalg.eigvalsh(Lap)[1])
    scale = 10**9
    return g, Fraction(max(0, math.floor((lam2 / 2 - 1e-9) * scale)), scale)


# ---------------------------------------------------------------- 2 -> k, small k

def reduce_2cut_to_kcut_smallk(inst: CutReconfigInstance, k_target: int, p1=Fraction(1, 2),
                               source_sequence: ReconfigSequence | None = None):
    """Keep V, attach k fresh vertices per vertex, tie them together along an expander."""
    _need_k(inst, 2, "reduce_2cut_to_kcut_smallk")
    k = int(k_target)
    p1 = Fraction(p1)
    if k < 3:
        raise ValidationError("k_target must be at least 3")
    if not 0 < p1 < 1:
        raise ValidationError("p1 must lie in (0, 1)")
    p2 = 1 - p1
    G = inst.graph
    n = G.n
    pad = max(4, n + (n % 2)) - n
    nn = n + pad
    X, h = expander_3regular(nn)
    W = G.total_weight

    def z(v, i):
        return nn + (v - 1) * k + i

    weighted = []
    qx = p1 / (X.m * k * (k - 1))
    for a, b, _ in X.edges:
        for i in range(1, k + 1):
            for j in range(1, k + 1):
                if i != j:
                    weighted.append((z(a, i), z(b, j), qx))
    for v, w, wt in G.edges:
        share = p2 * wt / W
        weighted.append((v, w, share / (2 * k - 3)))
        for a in (v, w):
            for i in range(3, k + 1):
                weighted.append((a, z(a, i), share / (2 * k - 3)))
    H = _merge(nn * (k + 1), weighted)

    def encode(f):
        cols = [f[v] if v <= n else 1 for v in range(1, nn + 1)]
        cols += [i for _ in range(nn) for i in range(1, k + 1)]
        return Coloring(k, tuple(cols))

    out = CutReconfigInstance(H, k, encode(inst.start), encode(inst.end))
    cert = ReductionCertificate("smallk", _summary(inst), _summary(out))
    cert.params.update({"k": k, "p1": p1, "p2": p2, "expansion_h": h, "padded_vertices": pad,
                        "delta_c": "p2 * eps_c / (2k - 3)",
                        "delta_s": "p2 * ((eps_s + eps_c)/2) / (2k - 3)"})
    if pad:
        cert.warnings.append(f"padded with {pad} isolated vertices so the expander exists")
    eps_c = _source_eps(inst, source_sequence)
    if eps_c is not None:
        b = SequenceBuilder(out.start)
        for f in source_sequence.steps[1:]:
            for v in range(1, n + 1):
                b.set(v, f[v])
        val = cert.attach_witness(out, b.build())
        target = 1 - p2 * eps_c / (2 * k - 3)
        cert.params["eps_c"] = eps_c
        cert.claims.append(Claim("witness value = 1 - p2 eps_c / (2k - 3)", target, val == target))
    return out, cert
