"""
Walking along the flex
======================

The special 3-prism embedding sits on a one-parameter family of
configurations.  Pinning node 1 at the origin (and node 2 on an axis,
node 3 in a plane) removes the rigid motions; pushing the pinned
framework off its embedding with a moving hyperplane then traces the
twist.  Endpoints are complex with small imaginary parts, so we report
the member residual of the real part alongside each step.
"""

import numpy as np

from tensegrity import (build_constraints, deform_framework, load_fixture,
                        numerical_nullspace, pin_moving_frame,
                        pinned_member_system)

graph, p, sys_ = load_fixture("3prism")
pinned = pin_moving_frame(p)
sysp = build_constraints(graph, pinned, rest_sq_lengths=sys_.rest_sq_lengths)
print("pinned coordinates:")
print(np.round(pinned.coords, 6))

members, free, values = pinned_member_system(sysp, pinned)
flex = numerical_nullspace(members.jacobian(values.astype(complex)).real)[:, 0]

for label, direction in (("one way", flex), ("the other", -flex)):
    steps = deform_framework(sysp, pinned, direction=direction,
                             epsilon=0.05, steps=1, seed=0)
    point = steps[-1].point.real
    z = point[3:, 2]
    print(f"\ntwisting {label}: top-triangle heights {np.round(z, 4)}")
    print(f"  member residual {steps[-1].member_residual:.2e}, "
          f"max imaginary part {steps[-1].result.max_imag:.2e}")
