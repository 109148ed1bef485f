"""
Clause survival in the SAT detour
=================================

A clause survives a half of the route if some literal stays true, or if a
literal turning true is flipped before every true literal turns false.
Minimizing over endpoint truth vectors gives the per-clause guarantee.
"""

from reconfig import binom_sum, clause_survival_prob, min_clause_survival, run_approx_sat
from reconfig.approx_sat import lemma_bound
from reconfig.generators import random_sat_instance
from reconfig.reductions import horn_example

print("k=3, different literals:", clause_survival_prob(3, (1, 0, 0), (0, 1, 0)))
print("k=3, same literal:      ", clause_survival_prob(3, (1, 0, 0), (1, 0, 0)))
print("binomial sum helper, n=2 shift=1:", binom_sum(2, 1))

for k in range(3, 11):
    m = min_clause_survival(k)
    print(f"k={k:2d}  min survival {float(m):.6f}  per-clause bound {float(lemma_bound(k)):.4f}")

inst = random_sat_instance(20, 60, 5, seed=3)
res = run_approx_sat(inst)
print("E5 instance: value", res.value, "estimator", res.root_estimate)
print("horn n=6:", run_approx_sat(horn_example(6)).value)
