"""
Certifying rigidity on a small sphere
=====================================

Is there any valid configuration (other than the embedding itself) at
distance exactly epsilon from p?  The distance-critical points of the
constraint variety on the epsilon-sphere are solutions of a polynomial
system, so homotopy continuation can search for them exhaustively.

The triangle is rigid: nothing on the sphere.  The two-bar hinge folds:
two witnesses appear, one per fold direction.
"""

import time

import numpy as np

from tensegrity import (build_constraints, epsilon_rigidity_check,
                        evaluate_members, load_fixture, pin_moving_frame)

for name in ("triangle", "hinge"):
    graph, p, sys_ = load_fixture(name)
    pinned = pin_moving_frame(p)
    sysp = build_constraints(graph, pinned,
                             rest_sq_lengths=sys_.rest_sq_lengths)
    t0 = time.perf_counter()
    result = epsilon_rigidity_check(sysp, pinned, epsilon=0.1, seed=0)
    elapsed = time.perf_counter() - t0
    print(f"{name}: {result.verdict}  "
          f"({result.paths_total} paths, {elapsed:.1f}s)")
    for witness in result.witnesses:
        residual, _ = evaluate_members(sysp, witness)
        print(f"  witness {np.round(witness.coords, 6).tolist()}  "
              f"member residual {np.max(np.abs(residual)):.1e}")
