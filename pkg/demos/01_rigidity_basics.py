"""
Ranks, coranks, and flexes of the 3-prism
=========================================

The bundled 3-prism framework is the running example: six nodes, twelve
members, embedded in R^3 with both triangles parallel.  At a random
embedding the constraint Jacobian has corank 6 (nothing but rigid
motions); at the special embedding a seventh null vector appears.
"""

import numpy as np

from tensegrity import (Configuration, jacobian_at, load_fixture,
                        nullspace_decomposition, numerical_nullspace,
                        rigidity_report)

graph, p, sys_ = load_fixture("3prism")
print(f"nodes: {graph.n}, members: {graph.m}, dimension: {graph.d}")

# corank at a few random embeddings: always 6
rng = np.random.default_rng(0)
for trial in range(3):
    q = Configuration(rng.uniform(-1.0, 1.0, size=(graph.n, graph.d)))
    corank = numerical_nullspace(jacobian_at(sys_, q)).shape[1]
    print(f"random embedding {trial}: corank {corank}")

# ... but the symmetric embedding carries one extra null direction
report = rigidity_report(sys_, p, seed=0)
print(f"\nat the special embedding: corank {report.corank_at_p} "
      f"(generic {report.generic_corank}) -> {report.verdict}")

dec = nullspace_decomposition(sys_, p)
flex = dec.flexes[:, 0]
flex = flex * (1.58 / np.max(np.abs(flex)))
print("\nthe flex, one row per node (dx, dy, dz):")
for i in range(graph.n):
    print(f"  node {i + 1}: {np.round(flex[3 * i:3 * i + 3], 3)}")
