"""
Stripe, consistency and edge testers on grids
=============================================

A pair tester picks two positions and accepts when their colors differ.
Turning each pair into a weighted edge gives a graph whose cut value is the
acceptance probability.
"""

import numpy as np

from reconfig import Coloring, GridColoring, cut_value, stripe_reject_prob, stripe_report, tester_accept_prob
from reconfig.approx_cut import make_rng
from reconfig.reductions import build_consistency_tester, build_edge_tester, tester_to_graph

k = 4
h, v = GridColoring.horizontal(k), GridColoring.vertical(k)
print(np.array(h.cells))
print("stripe reject on a striped grid:", stripe_reject_prob(h))

rng = make_rng(1)
noisy = GridColoring.from_array(rng.integers(1, k + 1, size=(k, k)))
r = stripe_report(noisy)
print(np.array(noisy.cells))
print("distances", r.dist_h, r.dist_v, "dec", r.dec, "stripe reject", stripe_reject_prob(noisy))

cons = build_consistency_tester(k)
print("consistency reject, same stripes:", 1 - tester_accept_prob(cons, h.flat() + h.flat()))
print("consistency reject, crossed stripes:", 1 - tester_accept_prob(cons, h.flat() + v.flat()))

edge = build_edge_tester(k)
g = tester_to_graph(edge)
cfg = noisy.flat() + h.flat()
print("edge tester accept", tester_accept_prob(edge, cfg), "== cut value", cut_value(g, Coloring(k, cfg)))
