"""
Relative entropy of three Bell pairs against the Smolin state
=============================================================

Mix only three of the four |B_i>|B_i> terms. The Smolin state is separable
across AC:BD, so the relative entropy to it bounds the relative entropy of
entanglement (and therefore the distillable entanglement) across that cut.
"""

import math

import belldisc as bd
from belldisc.bellzoo import all_triples

rho_s = bd.smolin()
for triple in all_triples():
    rho = bd.rho3(triple)
    s = bd.relative_entropy(rho, rho_s)
    print(f"triple {triple}: S = {s:.12f}   entropy = {bd.von_neumann_entropy(rho):.6f}")
print(f"2 - log2(3)        = {2 - math.log2(3):.12f}")

###############################################################################
# The bound is only emitted when the separable reference passes its
# certificate check
cert = bd.smolin_certificate("AC:BD")
print("certified upper bound:", bd.rel_ent_upper_bound(bd.rho3((1, 2, 4)), rho_s, cert))

# The other direction is infinite: rho_s has support rho3 lacks
print("S(rho_s || rho3) =", bd.relative_entropy(rho_s, bd.rho3((1, 2, 3))))

###############################################################################
# Bounds on distillable entanglement for each cut
for cut in ["AB:CD", "AC:BD", "AD:BC"]:
    r = bd.distillable_bounds("rho3", cut, triple=(1, 2, 3))
    print(f"{cut}: {r.lower_ebits:.3f} <= D <= {r.upper_ebits:.6f}   ({r.upper_provenance})")
print("log-negativity across AC:BD:", bd.log_negativity(bd.rho3((1, 2, 3)), "AC:BD"))
