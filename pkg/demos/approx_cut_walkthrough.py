"""
Random detour for Maxmin k-Cut
==============================

The algorithm walks start -> F -> end through a detour coloring F.  Low-degree
vertices move first towards F and last back to the end coloring.  The
derandomized version fixes F and the orders by conditional expectations.
"""

from fractions import Fraction

from reconfig import CutAlgoConfig, edge_survival_prob, opt_cut_exact, run_approx_cut
from reconfig.generators import random_cut_instance

# One proper edge, one half of the route: survives with probability (1 - 1/k)^2.
for k in (2, 3, 4, 8):
    print(f"k={k}: one-way survival {edge_survival_prob(k, (1, 2))}")

# Both halves with independent orders.
print("two halves, k=3:", edge_survival_prob(3, (1, 2), (2, 1)))

inst = random_cut_instance(40, 5, 0.2, seed=11)
res = run_approx_cut(inst)
print("derandomized value", res.value, "estimator", res.root_estimate, "bound", res.bound)
print("high-degree vertices:", res.high_degree)

# Random mode, a handful of seeds.
vals = [run_approx_cut(inst, CutAlgoConfig(seed=s, mode="random")).value for s in range(5)]
print("random mode:", [f"{float(v):.3f}" for v in vals])

small = random_cut_instance(6, 4, 0.5, seed=2)
print("small instance: approx", run_approx_cut(small).value, "exact", opt_cut_exact(small).opt)
print("target factor at k=5:", (1 - Fraction(1, 5) - Fraction(1, 125)) ** 2)
