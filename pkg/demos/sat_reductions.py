"""
SAT reductions: Horn CNF, width reduction and the NP gap
========================================================
"""

from reconfig import Assignment, opt_sat_exact
from reconfig.generators import random_e3_formula, random_sat_instance
from reconfig.reductions import (AND, BLUE, RED, AndOrGraph, Link, Node, horn_cnf,
                                 ncl_verifier, np_gap_reduction, reduce_clause_width)

# Two AND nodes with loose links; every link oriented inward is accepted.
g = AndOrGraph((Node(AND), Node(AND)),
               (Link((1,), RED), Link((1,), RED), Link((1,), BLUE),
                Link((2,), RED), Link((2,), RED), Link((2,), BLUE)))
v = ncl_verifier(g)
print("q =", v.q, "free bits =", round(v.f_free_bits, 4), "degree =", v.degree)
ones = Assignment((1,) * 6)
inst, cert = horn_cnf(v, 2, ones, ones)
print(inst.formula.m, "clauses of width", inst.formula.k)

src = random_sat_instance(14, 3, 8, seed=9)
out, cert = reduce_clause_width(src, 4)
print("width 8 -> 4:", src.formula.m, "clauses become", out.formula.m, "over", out.formula.n, "variables")

phi = random_e3_formula(5, 3, seed=2)
out, cert = np_gap_reduction(phi, 5)
print("np k=5:", out.formula.m, "clauses; witness value", cert.witness_value,
      "; exact opt", opt_sat_exact(out).opt)
