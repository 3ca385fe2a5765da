import numpy as np
import pytest

from tensegrity import Configuration, FrameworkGraph, build_constraints, load_fixture


def random_framework(rng, n=None, d=None, kinds=("bar",)):
    """A connected-ish random framework with generic coordinates."""
    n = int(n if n is not None else rng.integers(4, 8))
    d = int(d if d is not None else rng.integers(2, 4))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    m = int(rng.integers(n, len(pairs) + 1))
    chosen = sorted(rng.choice(len(pairs), size=m, replace=False))
    members = tuple((pairs[k][0], pairs[k][1],
                     str(rng.choice(kinds))) for k in chosen)
    graph = FrameworkGraph(n=n, d=d, members=members)
    p = Configuration(rng.uniform(-1.0, 1.0, size=(n, d)))
    return graph, p, build_constraints(graph, p)


def random_rigid_motion(rng, d):
    """A Haar-ish random rotation (det +1) and a random translation."""
    q, r = np.linalg.qr(rng.normal(size=(d, d)))
    q = q * np.sign(np.diagonal(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q, rng.uniform(-2.0, 2.0, size=d)


@pytest.fixture(scope="session")
def prism():
    return load_fixture("3prism")
