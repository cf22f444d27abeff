"""
Bell states and the four-party Smolin mixture
=============================================

Build the four Bell states, check they form an orthonormal basis, then mix
|B_i>_AB |B_i>_CD equally and look at the result from every two-versus-two
grouping of the parties.
"""

import numpy as np

import belldisc as bd

# The four Bell kets, with their (phase, parity) bit labels
for i in range(1, 5):
    lab = bd.BellLabel(i)
    print(f"B{i} = {np.round(bd.bell(i).real, 4)}   phase={lab.phase_bit} parity={lab.parity_bit}")

gram = np.array([[np.vdot(bd.bell(i), bd.bell(j)) for j in range(1, 5)] for i in range(1, 5)])
print("Gram matrix is the identity:", np.allclose(gram, np.eye(4)))

# Each Bell state is a local Pauli away from B1, up to a sign
print("(I x ZX)|B1> = ", np.round(np.kron(np.eye(2), bd.rel_pauli(1, 4)) @ bd.bell(1), 4).real)

###############################################################################
# The Smolin state: rank four, every single party maximally mixed
rho = bd.smolin()
print("spectrum:", np.round(bd.eigh(rho).eigenvalues[:5], 6))
print("marginal on A:\n", bd.partial_trace(rho, [0]).real)

###############################################################################
# Swapping B with C (or with D) leaves the matrix unchanged, so the same
# state is an equal mixture of Bell pairs on AC and BD
for name, perm in [("B<->C", [0, 2, 1, 3]), ("B<->D", [0, 3, 2, 1])]:
    dev = np.max(np.abs(bd.permute_qubits(rho, perm) - rho))
    print(f"{name} swap deviation: {dev:.1e}")

cert = bd.smolin_certificate("AC:BD")
print("AC:BD product decomposition reproduces the state:", bd.verify_certificate(rho, cert).ok)

###############################################################################
# Partial transposes: positive across all 2:2 cuts, not across A:BCD
for cut in ["AB:CD", "AC:BD", "AD:BC", "A:BCD"]:
    print(f"{cut:6s} min eigenvalue of partial transpose = {bd.ppt_min_eigenvalue(rho, cut):+.4f}")
