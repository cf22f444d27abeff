"""
Discriminating Bell states with local measurements
==================================================

Two Bell states can always be told apart from one copy. With two copies all
four can. For three states from one copy, Alice's first measurement always
leaves Bob with pairwise overlapping states.
"""

import numpy as np

import belldisc as bd
from belldisc.bellzoo import all_triples

###############################################################################
# Any pair from a single copy: Z correlations read the parity bit, X
# correlations the phase bit
for i, j in [(1, 2), (1, 3), (1, 4), (3, 4)]:
    t = bd.discriminate_two_bell(i, j)
    print(f"B{i} vs B{j}: success = {t.success_probability:.12f}   ({t.notes})")

t = bd.discriminate_two_bell(1, 2)
for b in t.branches:
    print(f"  prepared B{b.prepared}: outcomes {b.outcomes} p={b.probability:.3f} -> B{b.verdict}")

###############################################################################
# Two copies of an unknown Bell state
for label in range(1, 5):
    t = bd.discriminate_four_bell_two_copies(label)
    tally = bd.sample(t, shots=1000, seed=42)
    print(f"B{label}: verdict B{t.verdict}, sampled {tally.correct}/1000 correct")

###############################################################################
# Three states, one copy: the squared overlaps of Bob's conditional states sum
# to one, so the largest can never drop below 1/sqrt(3)
e = np.array([np.cos(0.4), np.exp(0.3j) * np.sin(0.4)])
o = bd.overlap_triple(e, (1, 2, 3))
print("overlaps", np.round(o, 4), "sum of squares", round(sum(x * x for x in o), 12))

for triple in all_triples():
    rep = bd.three_bell_oneway_search(triple, (91, 180))
    print(f"{triple}: grid min of max overlap = {rep.minimum:.6f} (bound {rep.bound:.6f})")
