from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from reconfig import (
    Assignment,
    Coloring,
    ParseError,
    ReconfigSequence,
    ValidationError,
    WeightedMultigraph,
    parse_cut_instance,
    parse_sat_instance,
    parse_sequence,
    serialize_cut_instance,
    serialize_sat_instance,
    serialize_sequence,
)
from reconfig.generators import random_cut_instance
from reconfig.instances import CutReconfigInstance, parse_dimacs_cnf
from reconfig.reductions import horn_example


def test_smallest_cut_file():
    inst = parse_cut_instance("p cutreconf 2 2\ne 1 2 1/1\ns 1 2\nt 2 1\n")
    assert inst.graph.n == 2
    assert inst.graph.edges == ((1, 2, Fraction(1)),)
    assert inst.start.colors == (1, 2) and inst.end.colors == (2, 1)


def test_self_loop_reports_line():
    with pytest.raises(ParseError, match="line 2: self-loop"):
        parse_cut_instance("p cutreconf 3 2\ne 3 3 1/1\ns 1 1 1\nt 1 1 1\n")


@pytest.mark.parametrize("text,msg", [
    ("p cutreconf 2\n", "line 1: malformed header"),
    ("p cutreconf 2 2\ne 1 2 1/1\ns 1 3\nt 1 2\n", "line 3: color 3 out of range"),
    ("p cutreconf 2 2\ne 1 2 -1/2\ns 1 2\nt 1 2\n", "line 2: negative weight"),
    ("p cutreconf 2 2\n# comment\ne 1 5 1\ns 1 2\nt 1 2\n", "line 3: vertex out of range"),
])
def test_cut_parse_errors(text, msg):
    with pytest.raises(ParseError, match=msg):
        parse_cut_instance(text)


def test_sat_file_and_violation():
    inst = parse_sat_instance("p satreconf 3 1 3\n1 -2 -3 0\ns 000\nt 100\n")
    assert inst.formula.clauses == ((1, -2, -3),)
    with pytest.raises(ParseError, match="start violates clause 1"):
        parse_sat_instance("p satreconf 3 1 3\n1 -2 -3 0\ns 011\nt 100\n")


def test_sat_duplicate_variable():
    with pytest.raises(ParseError, match="line 2: variable 1 repeated"):
        parse_sat_instance("p satreconf 3 1 3\n1 -1 2 0\ns 000\nt 000\n")


@pytest.mark.parametrize("seed", range(5))
def test_cut_round_trip(seed):
    inst = random_cut_instance(10, 4, 0.4, seed=seed)
    back = parse_cut_instance(serialize_cut_instance(inst))
    assert back == inst
    assert back.graph.edge_multiset() == inst.graph.edge_multiset()


def test_horn_round_trip():
    inst = horn_example(6)
    assert parse_sat_instance(serialize_sat_instance(inst)) == inst


weights = st.fractions(min_value=0, max_value=5, max_denominator=12).filter(lambda w: w > 0)


@given(st.integers(2, 7), st.data())
def test_round_trip_property(n, data):
    m = data.draw(st.integers(1, 12))
    edges = []
    for _ in range(m):
        u = data.draw(st.integers(1, n))
        v = data.draw(st.integers(1, n).filter(lambda x: x != u))
        edges.append((u, v, data.draw(weights)))
    k = data.draw(st.integers(1, 5))
    col = st.lists(st.integers(1, k), min_size=n, max_size=n)
    inst = CutReconfigInstance(WeightedMultigraph(n, tuple(edges)), k,
                               Coloring(k, tuple(data.draw(col))), Coloring(k, tuple(data.draw(col))))
    assert parse_cut_instance(serialize_cut_instance(inst)) == inst


def test_unit_multiplicity_export():
    g = WeightedMultigraph(3, ((1, 2, Fraction(1, 2)), (2, 3, Fraction(1, 3))))
    assert sorted(g.unit_multiplicity()) == [(1, 2)] * 3 + [(2, 3)] * 2


def test_graph_invariants():
    with pytest.raises(ValidationError):
        WeightedMultigraph(2, ((1, 1, 1),))
    with pytest.raises(ValidationError):
        WeightedMultigraph(2, ((1, 2, 0),))
    with pytest.raises(TypeError):
        WeightedMultigraph(2, ((1, 2, 0.5),))


@given(st.lists(st.lists(st.integers(0, 1), min_size=5, max_size=5), min_size=1, max_size=8))
def test_sequence_validator(rows):
    ok = all(sum(a != b for a, b in zip(r, s)) <= 1 for r, s in zip(rows, rows[1:]))
    steps = tuple(Assignment(tuple(r)) for r in rows)
    if ok:
        seq = ReconfigSequence("sat", steps)
        assert len(seq) == len(rows)
    else:
        with pytest.raises(ValidationError, match="step"):
            ReconfigSequence("sat", steps)


def test_sequence_file_round_trip():
    inst = horn_example(3)
    seq = ReconfigSequence("sat", tuple(Assignment.from_string(s) for s in ("000", "100", "110", "111")))
    assert parse_sequence(serialize_sequence(seq), inst) == seq


def test_dimacs_width():
    phi = parse_dimacs_cnf("c x\np cnf 4 2\n1 2 3 0\n-1 -2 4 0\n")
    assert phi.k == 3 and phi.m == 2
