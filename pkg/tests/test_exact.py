from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from reconfig import (
    Assignment,
    BudgetExceeded,
    CnfFormula,
    Coloring,
    CutReconfigInstance,
    SatReconfigInstance,
    ValidationError,
    WeightedMultigraph,
    cut_value,
    opt_cut_exact,
    opt_sat_exact,
    sat_value,
    sequence_value,
)
from reconfig.reductions import horn_example

from oracles import cut_config_space, cut_val, maxmin_by_paths, sat_val


def _cut(n, k, edges, s, t):
    return CutReconfigInstance(WeightedMultigraph.from_edges(n, edges), k, Coloring(k, s), Coloring(k, t))


def test_single_edge_swap_needs_monochromatic_step():
    assert opt_cut_exact(_cut(2, 2, [(1, 2)], (1, 2), (2, 1))).opt == 0


def test_triangle():
    res = opt_cut_exact(_cut(3, 2, [(1, 2), (2, 3), (1, 3)], (1, 1, 2), (1, 2, 1)))
    assert res.opt == Fraction(2, 3)


def test_horn_small_cases():
    assert opt_sat_exact(horn_example(6)).opt == Fraction(4, 5)
    assert opt_sat_exact(horn_example(9)).opt <= 1 - Fraction(45, 252)


def test_budget_refusal():
    with pytest.raises(BudgetExceeded):
        opt_sat_exact(horn_example(12), budget=1000)


def test_empty_inputs():
    with pytest.raises(ValidationError):
        opt_cut_exact(CutReconfigInstance(WeightedMultigraph(2, ()), 2, Coloring(2, (1, 2)), Coloring(2, (1, 2))))


def test_threads_do_not_change_result():
    inst = horn_example(9)
    assert opt_sat_exact(inst, threads=1) == opt_sat_exact(inst, threads=4)


cut_instances = st.integers(2, 3).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(2, 3) if n == 2 else st.just(2),
    st.lists(st.tuples(st.integers(1, n), st.integers(1, n)).filter(lambda e: e[0] != e[1]),
             min_size=1, max_size=4),
    st.data()))


@given(cut_instances)
def test_cut_matches_path_enumeration(args):
    n, k, edges, data = args
    col = st.tuples(*[st.integers(1, k)] * n)
    s, t = data.draw(col), data.draw(col)
    res = opt_cut_exact(_cut(n, k, edges, s, t))
    w = [(u, v, 1) for u, v in edges]
    configs, nb = cut_config_space(n, k)
    assert len(configs) <= 10
    assert res.opt == maxmin_by_paths(configs, nb, lambda c: cut_val(w, c), s, t)


def _bit_nb(n):
    def nb(a):
        for i in range(n):
            yield a[:i] + (1 - a[i],) + a[i + 1:]
    return nb


@given(st.lists(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), min_size=1, max_size=3, unique_by=abs),
                min_size=1, max_size=5), st.data())
def test_sat_matches_path_enumeration(clauses, data):
    n = 3
    ok = [b for b in product((0, 1), repeat=n) if sat_val(clauses, b) == 1]
    if not ok:
        return
    s, t = data.draw(st.sampled_from(ok)), data.draw(st.sampled_from(ok))
    k = max(len(c) for c in clauses)
    inst = SatReconfigInstance(CnfFormula(n, k if all(len(c) == k for c in clauses) else 0,
                                          tuple(map(tuple, clauses))),
                               Assignment(s), Assignment(t))
    expect = maxmin_by_paths(list(product((0, 1), repeat=n)), _bit_nb(n), lambda b: sat_val(clauses, b), s, t)
    assert opt_sat_exact(inst).opt == expect


@given(st.integers(0, 2**16), st.integers(3, 5))
def test_opt_bounded_and_witness_exact(seed, n):
    from reconfig.generators import random_cut_instance
    inst = random_cut_instance(n, 3, 0.6, seed=seed)
    res = opt_cut_exact(inst)
    assert res.opt <= min(cut_value(inst.graph, inst.start), cut_value(inst.graph, inst.end))
    res.witness.validate_for(inst)
    assert sequence_value(inst, res.witness) == res.opt
    assert all(cut_value(inst.graph, c) >= res.opt for c in res.witness.steps)


def test_sat_witness_exact():
    inst = horn_example(6)
    res = opt_sat_exact(inst)
    assert sequence_value(inst, res.witness) == res.opt
    assert min(sat_value(inst.formula, a) for a in res.witness.steps) == res.opt
