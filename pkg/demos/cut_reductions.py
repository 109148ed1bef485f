"""
Gap reductions between cut problems
===================================

Each reduction returns the new instance and a certificate listing the
parameters, the claims it could check, and a lifted completeness witness when
a source sequence is supplied.
"""

from reconfig import Coloring, CutReconfigInstance, ReconfigSequence, WeightedMultigraph
from reconfig.reductions import (enc, expander_3regular, reduce_2cut_to_kcut,
                                 reduce_2cut_to_kcut_smallk, reduce_6cut_to_2cut)

g = WeightedMultigraph.from_edges(4, [(1, 2), (2, 3), (3, 4), (4, 1)])
start = Coloring(2, (1, 2, 1, 2))
inst = CutReconfigInstance(g, 2, start, start)
src = ReconfigSequence("cut", (start,))

out, cert = reduce_2cut_to_kcut(inst, 3, source_sequence=src)
print(cert.to_text())

out, cert = reduce_2cut_to_kcut_smallk(inst, 4, source_sequence=src)
print(cert.to_text())

print("6-color encoding:", {a: enc(a) for a in range(1, 7)})
six = CutReconfigInstance(WeightedMultigraph.from_edges(2, [(1, 2)]), 6, Coloring(6, (1, 2)), Coloring(6, (1, 2)))
out, cert = reduce_6cut_to_2cut(six, ReconfigSequence("cut", (six.start,)))
print("6 -> 2 witness value:", cert.witness_value)

for n in (4, 6, 10):
    X, h = expander_3regular(n)
    print(f"3-regular n={n}: {X.m} edges, expansion {h}")
