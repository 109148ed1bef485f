"""
Exact maxmin values on small instances
======================================

The exact solver sweeps the whole configuration space, so it is only for
small inputs.  It returns the best achievable minimum value together with a
sequence that attains it.
"""

from reconfig import (Coloring, CutReconfigInstance, WeightedMultigraph,
                      cut_value, opt_cut_exact, opt_sat_exact)
from reconfig.reductions import horn_example

# A triangle 2-colored as 112, to be turned into 121.
tri = WeightedMultigraph.from_edges(3, [(1, 2), (2, 3), (1, 3)])
inst = CutReconfigInstance(tri, 2, Coloring(2, (1, 1, 2)), Coloring(2, (1, 2, 1)))
res = opt_cut_exact(inst)
print("triangle opt:", res.opt)
for step in res.witness.steps:
    print("  ", step.colors, cut_value(tri, step))

# Swapping the two colors of a single edge forces a monochromatic moment.
edge = WeightedMultigraph.from_edges(2, [(1, 2)])
swap = CutReconfigInstance(edge, 2, Coloring(2, (1, 2)), Coloring(2, (2, 1)))
print("edge swap opt:", opt_cut_exact(swap).opt)

# Horn example: every width-3 clause with one positive literal, 0...0 -> 1...1.
for n in (6, 9):
    r = opt_sat_exact(horn_example(n))
    print(f"horn n={n}: opt = {r.opt} ({float(r.opt):.4f}), {r.explored} configurations at or above opt")
