from collections import deque
from fractions import Fraction
from itertools import product
from math import comb

import pytest

from reconfig import (
    Assignment,
    BudgetExceeded,
    CnfFormula,
    ValidationError,
    explicit_verifier_accept_prob,
    opt_sat_exact,
    sat_value,
    sequence_value,
)
from reconfig.generators import random_e3_formula, random_sat_instance
from reconfig.reductions import (
    AND,
    BLUE,
    OR,
    PROTECTED_OR,
    RED,
    AndOrGraph,
    Link,
    Node,
    horn_cnf,
    horn_example,
    ncl_verifier,
    np_gap_reduction,
    parse_andor,
    reduce_clause_width,
    tuple_violations,
)
from reconfig.reductions.verifiers import node_accepted_views


# ---------------------------------------------------------------- Horn example

def test_horn_example_counts():
    assert horn_example(3).formula.m == 3
    phi = horn_example(9).formula
    assert phi.m == 252
    a = Assignment((1,) * 6 + (0,) * 3)
    assert phi.m - phi.num_satisfied(a) == comb(6, 2) * 3 == 45


def test_horn_example_weight_two_thirds():
    n = 30
    phi = horn_example(n).formula
    a = Assignment((1,) * (2 * n // 3) + (0,) * (n // 3))
    assert 1 - sat_value(phi, a) > Fraction(4, 27)


def test_horn_example_bad_n():
    with pytest.raises(ValidationError):
        horn_example(7)


# ---------------------------------------------------------------- NCL and Horn CNF

def two_and_toy():
    nodes = (Node(AND), Node(AND))
    links = (Link((1,), RED), Link((1,), RED), Link((1,), BLUE),
             Link((2,), RED), Link((2,), RED), Link((2,), BLUE))
    return AndOrGraph(nodes, links)


def ring_toy():
    nodes = tuple(Node(AND) for _ in range(4))
    links = (Link((1, 2), RED), Link((2, 3), RED), Link((3, 4), RED), Link((4, 1), RED),
             Link((1,), BLUE), Link((2,), BLUE), Link((3,), BLUE), Link((4,), BLUE))
    return AndOrGraph(nodes, links)


def mixed_toy():
    nodes = (Node(OR), Node(PROTECTED_OR, (4, 5)), Node(AND), Node(AND))
    links = (Link((1,), BLUE), Link((1,), BLUE), Link((1,), BLUE),
             Link((2,), BLUE), Link((2,), BLUE), Link((2,), BLUE),
             Link((3, 4), RED), Link((3, 4), RED), Link((3,), BLUE), Link((4,), BLUE))
    return AndOrGraph(nodes, links)


def test_accepted_view_counts():
    g = mixed_toy()
    assert len(node_accepted_views(g, 1)[1]) == 7
    assert len(node_accepted_views(g, 2)[1]) == 5
    assert len(node_accepted_views(g, 3)[1]) == 5
    v = ncl_verifier(two_and_toy())
    assert v.q == 3 and v.degree == 1
    assert abs(v.f_free_bits - 2.321928) < 1e-6


def test_ring_degree_and_acceptance():
    v = ncl_verifier(ring_toy())
    assert v.degree == 2
    assert explicit_verifier_accept_prob(v, Assignment((1,) * 8)) == 1
    # every node loses its blue link and keeps at most one red inward
    assert explicit_verifier_accept_prob(v, Assignment((1, 1, 1, 1, 0, 0, 0, 0))) == 0


def test_ncl_type_errors():
    bad = AndOrGraph((Node(AND),), (Link((1,), BLUE), Link((1,), BLUE), Link((1,), BLUE)))
    with pytest.raises(ValidationError, match="AND needs"):
        ncl_verifier(bad)


def test_horn_cnf_two_node_toy():
    v = ncl_verifier(two_and_toy())
    ones = Assignment((1,) * 6)
    inst, cert = horn_cnf(v, 2, ones, ones)
    assert cert.params["disjoint_tuples"] == 2
    assert inst.formula.m == 2 * 15
    assert all(len(c) == 6 for c in inst.formula.clauses)
    assert cert.params["clauses_per_tuple_bound"] == 15


def _uniqueness(v, lam, phi):
    from itertools import permutations
    tuples = [t for t in permutations(range(len(v.checks)), lam)
              if len(set().union(*(v.checks[i].queries for i in t))) == lam * v.q]
    for bits in product((0, 1), repeat=v.proof_len):
        a = Assignment(bits)
        counts = tuple_violations(v, phi, lam, a)
        assert len(counts) == len(tuples)
        for t, c in zip(tuples, counts):
            acc = [v.checks[i].accepts(a) for i in t]
            assert c == int(all(acc[:-1]) and not acc[-1])


@pytest.mark.parametrize("toy,lam", [(two_and_toy, 2), (ring_toy, 2), (mixed_toy, 2), (mixed_toy, 3)])
def test_horn_cnf_violated_clause_uniqueness(toy, lam):
    v = ncl_verifier(toy())
    assert v.proof_len <= 12
    ones = Assignment((1,) * v.proof_len)
    end = ones
    if toy is mixed_toy:
        # node 2 forbids links 4 and 5 both inward
        ones = Assignment((1, 1, 1, 1, 0, 1, 1, 1, 1, 1))
        end = Assignment((0, 1, 1, 0, 1, 1, 1, 1, 1, 1))
    inst, _ = horn_cnf(v, lam, ones, end)
    _uniqueness(v, lam, inst.formula)


def test_horn_cnf_errors():
    v = ncl_verifier(two_and_toy())
    ones = Assignment((1,) * 6)
    with pytest.raises(ValidationError, match="lambda"):
        horn_cnf(v, 1, ones, ones)
    with pytest.raises(ValidationError, match="rejected"):
        horn_cnf(v, 2, Assignment((0,) * 6), ones)
    with pytest.raises(BudgetExceeded):
        horn_cnf(v, 2, ones, ones, budget=1)


def test_parse_andor():
    text = "p andor 2 6\nn AND\nn AND\nl 1 0 red\nl 1 0 red\nl 1 0 blue\nl 2 0 red\nl 2 0 red\nl 2 0 blue\ns 111111\nt 111111\n"
    g, s, t = parse_andor(text)
    assert g == two_and_toy()
    assert s == t == Assignment((1,) * 6)


# ---------------------------------------------------------------- width reduction

def test_width_eight_to_four():
    inst = random_sat_instance(14, 5, 8, seed=4)
    out, cert = reduce_clause_width(inst, 4)
    assert cert.params["clauses_per_input_clause"] == 6
    assert cert.params["fresh_per_input_clause"] == 5
    assert out.formula.m == 6 * 5 and out.formula.n == 14 + 5 * 5
    assert all(len(c) == 4 and len({abs(l) for l in c}) == 4 for c in out.formula.clauses)
    out.check_endpoints()


def test_width_reduction_preserves_satisfiability_locally():
    # every satisfying assignment of one clause extends, every violating one cannot
    inst = random_sat_instance(8, 1, 6, seed=1)
    out, _ = reduce_clause_width(inst, 3)
    n = inst.formula.n
    for bits in product((0, 1), repeat=n):
        a = Assignment(bits)
        ok = inst.formula.first_violated(a) is None
        ext = any(out.formula.first_violated(Assignment(bits + z)) is None
                  for z in product((0, 1), repeat=out.formula.n - n))
        assert ok == ext


def test_width_reduction_errors():
    with pytest.raises(ValidationError):
        reduce_clause_width(random_sat_instance(8, 3, 3, seed=0), 4)


# ---------------------------------------------------------------- NP gap

def test_np_k5_counts_and_witness():
    phi = random_e3_formula(6, 2, seed=1)
    out, cert = np_gap_reduction(phi, 5)
    assert out.formula.m == 2 * 2 and out.formula.k == 5
    assert cert.witness_value == 1
    cert.check(out)


def _all_paths_hit(inst, n_x, K):
    """No single-flip path from start to end avoids y-blocks with exactly one 0."""
    n = inst.formula.n
    start, end = inst.start.bits, inst.end.bits

    def ok(b):
        return sum(1 for v in b[n_x:] if v == 0) != 1

    seen = {start}
    q = deque([start])
    while q:
        a = q.popleft()
        for i in range(n):
            b = a[:i] + (1 - a[i],) + a[i + 1:]
            if b not in seen and ok(b):
                seen.add(b)
                q.append(b)
    return end not in seen


@pytest.mark.parametrize("k", [5, 6, 7])
def test_np_single_zero_block(k):
    phi = random_e3_formula(4, 3, seed=k)
    out, _ = np_gap_reduction(phi, k)
    assert _all_paths_hit(out, 4, k - 3)


def test_np_unsatisfiable_loses_value():
    unsat = CnfFormula(3, 3, tuple(tuple(s * x for s, x in zip(signs, (1, 2, 3)))
                                   for signs in product((1, -1), repeat=3)))
    out, cert = np_gap_reduction(unsat, 5)
    assert cert.completeness_witness is None
    assert opt_sat_exact(out).opt < 1


@pytest.mark.parametrize("k,width", [(3, 0), (4, 4)])
def test_np_small_k_witness(k, width):
    phi = random_e3_formula(6, 8, seed=2)
    out, cert = np_gap_reduction(phi, k)
    assert out.formula.k == width
    assert cert.witness_value == 1
    assert sequence_value(out, cert.completeness_witness) == 1
    assert cert.params["m_aux"] == 1


def test_np_rejects_small_k():
    with pytest.raises(ValidationError):
        np_gap_reduction(random_e3_formula(4, 2), 2)
