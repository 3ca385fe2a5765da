"""
Self stresses and the prestress certificate
===========================================

A self stress is a left null vector of the Jacobian: member tensions in
equilibrium at every node.  If some self stress makes the stress matrix
positive definite on the flex space, the framework is prestress rigid
even though it is not infinitesimally rigid.
"""

import numpy as np

from tensegrity import (load_fixture, nullspace_decomposition,
                        prestress_certificate, self_stress_basis,
                        stress_matrix)

graph, p, sys_ = load_fixture("3prism")

basis = self_stress_basis(sys_, p)
print(f"self stress space dimension: {len(basis)}")
w = basis[0].w / basis[0].w[0]
print("stress entries by member:")
for (i, j, _), wk in zip(graph.members, w):
    print(f"  ({i}, {j}): {wk:+.3f}")

# the tensegrity split stored with the fixture: which members could be
# cables (positive tension) and which struts
partition = sys_.metadata["tensegrity_partition"]
print(f"\ncables: {partition['cables']}")
print(f"bars:   {partition['bars']}")

cert = prestress_certificate(sys_, p, seed=0)
print(f"\ncertificate: {cert.verdict}, "
      f"min eigenvalue of the reduced matrix: {cert.min_eigenvalue:.6f}")

# re-verify off the search path: restrict Omega_w to the flex space
dec = nullspace_decomposition(sys_, p)
omega = stress_matrix(graph, cert.stress).omega
reduced = dec.flexes.T @ omega @ dec.flexes
print(f"independent check, eigenvalues: {np.linalg.eigvalsh(reduced)}")
