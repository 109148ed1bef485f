from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from reconfig import (
    Coloring,
    CutReconfigInstance,
    GridColoring,
    ReconfigSequence,
    ValidationError,
    WeightedMultigraph,
    cut_value,
    sequence_value,
    tester_accept_prob,
)
from reconfig.generators import random_cut_instance, random_grid
from reconfig.approx_cut import make_rng
from reconfig.reductions import (
    PairTester,
    build_consistency_tester,
    build_edge_tester,
    build_stripe_tester,
    dec,
    edge_expansion_exact,
    edge_tester_z,
    enc,
    expander_3regular,
    reduce_2cut_to_kcut,
    reduce_2cut_to_kcut_smallk,
    reduce_6cut_to_2cut,
    tester_to_graph,
)

from oracles import consistency_reject_brute, edge_reject_brute


# ---------------------------------------------------------------- testers

def test_stripe_tester_k2():
    t = build_stripe_tester(2)
    assert t.positions == 4
    assert [p for _, _, p in t.pairs] == [Fraction(1, 2)] * 2
    assert tester_to_graph(t).m == 2


@pytest.mark.parametrize("k", range(3, 7))
def test_testers_normalized(k):
    for t in (build_stripe_tester(k), build_consistency_tester(k), build_edge_tester(k, Fraction(1, 3))):
        assert sum(p for _, _, p in t.pairs) == 1


def test_consistency_row_pair_count():
    k = 3
    t = build_consistency_tester(k)
    row = [(i, j) for i, j, _ in t.pairs if i % k != (j - k * k) % k]
    assert len(row) == k**3 * (k - 1)


def test_edge_tester_weights():
    assert edge_tester_z(Fraction(1)) == 5
    t = build_edge_tester(3)
    f_part = sum(p for i, j, p in t.pairs if j < 9)
    g_part = sum(p for i, j, p in t.pairs if i >= 9)
    assert (f_part, g_part, 1 - f_part - g_part) == (Fraction(2, 5), Fraction(2, 5), Fraction(1, 5))


def test_singleton_tester():
    t = PairTester(2, ((0, 1, Fraction(1)),))
    g = tester_to_graph(t)
    assert g.edges == ((1, 2, Fraction(1)),)


@settings(max_examples=30)
@given(st.integers(2, 4), st.integers(0, 10**6))
def test_consistency_and_edge_match_oracle(k, seed):
    rng = make_rng(seed)
    f, g = random_grid(k, rng), random_grid(k, rng, "near")
    cfg = f.flat() + g.flat()
    assert 1 - tester_accept_prob(build_consistency_tester(k), cfg) == consistency_reject_brute(f.cells, g.cells)
    rho = Fraction(1, 2)
    assert 1 - tester_accept_prob(build_edge_tester(k, rho), cfg) == edge_reject_brute(f.cells, g.cells, rho)


# ---------------------------------------------------------------- 2 -> k via grids

def _two_cut(edges, n, s, t):
    return CutReconfigInstance(WeightedMultigraph.from_edges(n, edges), 2, Coloring(2, s), Coloring(2, t))


@pytest.mark.parametrize("k", [3, 4])
def test_crazy_sizes_and_exact_rejects(k):
    inst = _two_cut([(1, 2), (2, 3)], 3, (1, 2, 2), (2, 1, 2))
    out, cert = reduce_2cut_to_kcut(inst, k)
    assert out.graph.n == 3 * k * k
    Z = edge_tester_z(1)
    # edge 1-2 bichromatic, edge 2-3 monochromatic in the start coloring
    expect = 1 - Fraction(1, 2) * (1 / (2 * Z * k)) - Fraction(1, 2) * (1 / (Z * k))
    assert cut_value(out.graph, out.start) == expect


@pytest.mark.parametrize("same", [True, False])
def test_crazy_single_edge_matches_tester(same):
    k = 3
    s = (1, 1) if same else (1, 2)
    inst = _two_cut([(1, 2)], 2, s, s)
    out, _ = reduce_2cut_to_kcut(inst, k)
    Z = edge_tester_z(1)
    reject = 1 - cut_value(out.graph, out.start)
    assert reject == (1 / (Z * k) if same else 1 / (2 * Z * k))


def test_crazy_witness_and_claims():
    inst = random_cut_instance(5, 2, 0.6, seed=3)
    src = ReconfigSequence("cut", (inst.start,))
    inst = CutReconfigInstance(inst.graph, 2, inst.start, inst.start)
    out, cert = reduce_2cut_to_kcut(inst, 3, source_sequence=src)
    cert.check(out)
    assert cert.witness_value == cut_value(out.graph, out.start)
    assert cert.claims[0].holds is True


def test_crazy_lifts_a_real_sequence():
    inst = _two_cut([(1, 2), (2, 3), (1, 3)], 3, (1, 2, 2), (2, 1, 1))
    steps = [(1, 2, 2), (1, 1, 2), (2, 1, 2), (2, 1, 1)]
    src = ReconfigSequence("cut", tuple(Coloring(2, s) for s in steps))
    out, cert = reduce_2cut_to_kcut(inst, 3, source_sequence=src)
    assert sequence_value(out, cert.completeness_witness) == cert.witness_value
    cert.check(out)


def test_crazy_requires_two_coloring():
    inst = random_cut_instance(4, 3, 0.6, seed=1)
    with pytest.raises(ValidationError):
        reduce_2cut_to_kcut(inst, 3)


# ---------------------------------------------------------------- 6 -> 2

def test_encoding_table():
    assert enc(1) == (1, 1, 2, 2) and enc(3) == (1, 2, 2, 1)
    assert all(dec(enc(a)) == a for a in range(1, 7))
    assert sum(dec(w) is None for w in product((1, 2), repeat=4)) == 10


@pytest.mark.parametrize("a,b,expect", [(1, 2, Fraction(35, 54)), (1, 6, Fraction(38, 54)), (4, 4, Fraction(32, 54))])
def test_six_to_two_per_edge(a, b, expect):
    inst = CutReconfigInstance(WeightedMultigraph.from_edges(2, [(1, 2)]), 6, Coloring(6, (a, b)), Coloring(6, (a, b)))
    out, _ = reduce_6cut_to_2cut(inst)
    assert out.graph.n == 8
    assert cut_value(out.graph, out.start) == expect


def test_six_to_two_witness():
    inst = random_cut_instance(5, 6, 0.7, seed=2, proper=True)
    src = ReconfigSequence("cut", (inst.start,))
    inst = CutReconfigInstance(inst.graph, 6, inst.start, inst.start)
    out, cert = reduce_6cut_to_2cut(inst, src)
    cert.check(out)
    assert cert.witness_value >= Fraction(35, 54)


# ---------------------------------------------------------------- expander and small k

def test_expander_k4():
    g, h = expander_3regular(4)
    assert g.m == 6 and h >= 1


@pytest.mark.parametrize("n", [6, 8, 10, 22])
def test_expander_regular(n):
    g, h = expander_3regular(n)
    assert g.is_simple() and g.degrees()[1:] == [3] * n
    assert h > 0
    if n <= 20:
        assert h == edge_expansion_exact(g)


def test_expander_n6_exact():
    g, h = expander_3regular(6)
    # the 6-vertex Moebius ladder is K_{3,3}; worst S takes two vertices from one side and one
    # from the other: 5 cut edges over 3 vertices
    assert h == Fraction(5, 3)


def test_expander_odd():
    with pytest.raises(ValidationError):
        expander_3regular(7)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_smallk_endpoints_and_rejects(k):
    inst = _two_cut([(1, 2), (2, 3), (3, 4)], 4, (1, 1, 2, 1), (2, 1, 2, 1))
    p1 = Fraction(1, 2)
    out, cert = reduce_2cut_to_kcut_smallk(inst, k, p1)
    assert out.graph.n == 4 * (k + 1)
    # one monochromatic edge out of three, each contributing 1/(2k-3)
    assert cut_value(out.graph, out.start) == 1 - (1 - p1) * Fraction(1, 3) / (2 * k - 3)
    assert cut_value(out.graph, out.end) == 1


def test_smallk_padding_and_witness():
    inst = _two_cut([(1, 2), (2, 3)], 3, (1, 2, 1), (2, 1, 2))
    steps = [(1, 2, 1), (2, 2, 1), (2, 1, 1), (2, 1, 2)]
    src = ReconfigSequence("cut", tuple(Coloring(2, s) for s in steps))
    out, cert = reduce_2cut_to_kcut_smallk(inst, 3, source_sequence=src)
    assert cert.params["padded_vertices"] == 1
    cert.check(out)
    assert cert.claims[0].holds is True
