"""Numerical linear algebra of frameworks.

Jacobians of the member constraints, rigidity and incidence matrices,
nullspace bases split into rigid motions and flexes, infinitesimal-rigidity
verdicts, moving-frame pinning, and weighted graph Laplacians.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .framework import (
    Configuration,
    FrameworkError,
    FrameworkGraph,
    MemberConstraintSystem,
    squared_lengths,
)

#: relative singular-value cutoff for numerical rank decisions
RANK_REL_TOL = 1e-8

#: cutoff when orthonormalizing candidate spanning sets (rigid motions, flexes)
SPAN_REL_TOL = 1e-10

#: members shorter than this are treated as degenerate
MIN_MEMBER_LENGTH = 1e-12


@dataclass(frozen=True)
class RigidityMatrices:
    """Jacobian dg|_x, unit-row rigidity matrix A, and diagonal lengths L.

    The defining relation is L @ A == 0.5 * dg entrywise: L clears the
    per-row normalization of A while 1/2 removes the derivative factor 2.
    """

    jacobian: np.ndarray
    rigidity: np.ndarray
    edge_lengths: np.ndarray


@dataclass(frozen=True)
class NullspaceDecomposition:
    """Null dg|_p split as R (rigid motions) plus F (flexes), F orthogonal to R."""

    rigid_motions: np.ndarray
    flexes: np.ndarray
    tol: float

    @property
    def corank(self) -> int:
        return self.rigid_motions.shape[1] + self.flexes.shape[1]


@dataclass(frozen=True)
class RigidityReport:
    generic_corank: int
    corank_at_p: int
    rigid_motion_dim: int
    verdict: str
    decomposition: NullspaceDecomposition
    full_span: bool

    @property
    def flexes(self) -> np.ndarray:
        return self.decomposition.flexes

    def to_json_dict(self) -> dict:
        return {
            "generic_corank": self.generic_corank,
            "corank_at_p": self.corank_at_p,
            "rigid_motion_dim": self.rigid_motion_dim,
            "flex_dim": int(self.flexes.shape[1]),
            "verdict": self.verdict,
            "full_span": self.full_span,
            "rigid_motion_basis": self.decomposition.rigid_motions.T.tolist(),
            "flex_basis": self.flexes.T.tolist(),
        }


def jacobian_at(sys: MemberConstraintSystem, x: Configuration) -> np.ndarray:
    """Jacobian of the member polynomials at x, shape m x (n*d).

    The row of member (i, j) carries 2(x_ik - x_jk) in the node-i block and
    the negative in the node-j block.
    """
    graph = sys.graph
    coords = np.asarray(x.coords, dtype=float)
    if coords.shape != (graph.n, graph.d):
        raise FrameworkError(
            f"configuration shape {coords.shape} does not match ({graph.n}, {graph.d})")
    d = graph.d
    dg = np.zeros((graph.m, graph.n * d))
    for k, (i, j, _) in enumerate(graph.members):
        diff = 2.0 * (coords[i - 1] - coords[j - 1])
        dg[k, (i - 1) * d:i * d] = diff
        dg[k, (j - 1) * d:j * d] = -diff
    return dg


def incidence_matrix(graph: FrameworkGraph) -> np.ndarray:
    """m x n incidence matrix: row of member (i, j) has -1 at i and +1 at j."""
    inc = np.zeros((graph.m, graph.n))
    for k, (i, j, _) in enumerate(graph.members):
        inc[k, i - 1] = -1.0
        inc[k, j - 1] = 1.0
    return inc


def rigidity_and_incidence(sys: MemberConstraintSystem, x: Configuration):
    """Rigidity matrix A with antipodal unit-vector node blocks, plus L, dg,
    and the signed incidence matrix of the underlying graph.

    Raises on members of (numerically) zero length, where the unit vectors
    are undefined.
    """
    graph = sys.graph
    dg = jacobian_at(sys, x)
    lengths = np.sqrt(squared_lengths(graph, x))
    short = lengths <= MIN_MEMBER_LENGTH
    if np.any(short):
        bad = [graph.members[k][:2] for k in np.nonzero(short)[0]]
        raise FrameworkError(f"degenerate members (coincident endpoints): {bad}")
    rigidity = 0.5 * dg / lengths[:, None]
    mats = RigidityMatrices(jacobian=dg, rigidity=rigidity,
                            edge_lengths=np.diag(lengths))
    return mats, incidence_matrix(graph)


def _orthonormal_span(columns: np.ndarray, tol_rel: float = SPAN_REL_TOL) -> np.ndarray:
    """Orthonormal basis for the column span, dropping near-dependent directions."""
    if columns.size == 0:
        return np.zeros((columns.shape[0], 0))
    u, s, _ = np.linalg.svd(columns, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((columns.shape[0], 0))
    return u[:, s > tol_rel * s[0]]


def rigid_motion_basis(x: Configuration) -> np.ndarray:
    """Orthonormal basis of infinitesimal rigid motions at x, as columns.

    d translations plus binom(d,2) nodewise skew-matrix rotations; the
    dimension drops below binom(d+1,2) for degenerate embeddings.
    """
    coords = np.asarray(x.coords, dtype=float)
    n, d = coords.shape
    candidates = []
    for k in range(d):
        v = np.zeros((n, d))
        v[:, k] = 1.0
        candidates.append(v.reshape(-1))
    for a in range(d):
        for b in range(a + 1, d):
            v = np.zeros((n, d))
            v[:, a] = -coords[:, b]
            v[:, b] = coords[:, a]
            candidates.append(v.reshape(-1))
    return _orthonormal_span(np.column_stack(candidates))


def numerical_nullspace(M: np.ndarray, tol_rel: float = RANK_REL_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the nullspace of M.

    Right singular vectors whose singular value is <= tol_rel * sigma_max
    are taken as null directions; rank + corank = column count.
    """
    M = np.atleast_2d(np.asarray(M, dtype=float))
    _, s, vh = np.linalg.svd(M, full_matrices=True)
    if s.size == 0:
        return np.eye(M.shape[1])
    rank = int(np.count_nonzero(s > tol_rel * s[0]))
    return vh[rank:].T


def nullspace_decomposition(sys: MemberConstraintSystem, p: Configuration,
                            tol_rel: float = RANK_REL_TOL) -> NullspaceDecomposition:
    """Split Null dg|_p into rigid motions R and the orthogonal flex complement F."""
    null = numerical_nullspace(jacobian_at(sys, p), tol_rel)
    R = rigid_motion_basis(p)
    flex_raw = null - R @ (R.T @ null)
    F = _orthonormal_span(flex_raw)
    # R spans rigid motions globally; inside Null dg the complement has
    # exactly corank - dim R dimensions, so trim spurious near-zero columns.
    want = null.shape[1] - R.shape[1]
    if F.shape[1] > max(want, 0):
        F = F[:, :max(want, 0)]
    return NullspaceDecomposition(rigid_motions=R, flexes=F, tol=tol_rel)


def random_configuration(graph: FrameworkGraph, rng) -> Configuration:
    return Configuration(rng.uniform(-1.0, 1.0, size=(graph.n, graph.d)))


def affine_span_dimension(x: Configuration, tol_rel: float = SPAN_REL_TOL) -> int:
    coords = np.asarray(x.coords, dtype=float)
    centered = coords - coords[0]
    if centered.shape[0] == 1:
        return 0
    s = np.linalg.svd(centered, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol_rel * s[0]))


def rigidity_report(sys: MemberConstraintSystem, p: Configuration,
                    trials: int = 3, tol_rel: float = RANK_REL_TOL,
                    seed=None) -> RigidityReport:
    """Corank survey and infinitesimal-rigidity verdict at p.

    generic_corank is the minimum corank of dg over `trials` random
    configurations with i.i.d. uniform [-1, 1] coordinates; the verdict
    compares corank at p against binom(d+1, 2) for full-span embeddings.
    """
    if trials < 1:
        raise FrameworkError(f"trials must be >= 1, got {trials}")
    graph = sys.graph
    rng = np.random.default_rng(seed)
    coranks = []
    for _ in range(trials):
        q = random_configuration(graph, rng)
        coranks.append(numerical_nullspace(jacobian_at(sys, q), tol_rel).shape[1])
    generic_corank = min(coranks)

    decomp = nullspace_decomposition(sys, p, tol_rel)
    corank_at_p = decomp.corank
    rigid_dim = decomp.rigid_motions.shape[1]
    full_span = affine_span_dimension(p) == graph.d
    if full_span:
        rigid = corank_at_p == comb(graph.d + 1, 2)
    else:
        rigid = corank_at_p == rigid_dim
    return RigidityReport(
        generic_corank=generic_corank,
        corank_at_p=corank_at_p,
        rigid_motion_dim=rigid_dim,
        verdict="infinitesimally_rigid" if rigid else "not_infinitesimally_rigid",
        decomposition=decomp,
        full_span=full_span,
    )


def pin_moving_frame(x: Configuration) -> Configuration:
    """Change coordinates so node 1 sits at the origin, node 2 on the first
    axis, node 3 in the span of the first two axes, and so on.

    Distances are preserved (the map is a rigid motion up to reflection);
    the binom(d+1,2) structural zeros are set exactly.  Node 2 lands on the
    positive first axis; remaining reflection choices follow the QR factor
    as computed, which leaves already-pinned input untouched.
    """
    coords = np.asarray(x.coords, dtype=float)
    n, d = coords.shape
    if n < d:
        raise FrameworkError(f"need at least d={d} nodes to pin a frame")
    centered = coords - coords[0]
    M = centered[1:d].T  # columns p2-p1, ..., pd-p1
    if d > 1:
        q, r = np.linalg.qr(M, mode="complete")
        diag = np.abs(np.diagonal(r))
        scale = np.max(np.abs(M)) if M.size else 0.0
        if np.any(diag <= 1e-12 * max(scale, 1.0)):
            raise FrameworkError("degenerate leading nodes: cannot fix the frame")
        if r[0, 0] < 0.0:
            q = q.copy()
            q[:, 0] = -q[:, 0]
        pinned = centered @ q
    else:
        pinned = centered.copy()
    for i in range(min(d, n)):
        pinned[i, i:] = 0.0
    return Configuration(pinned)


def laplacian_eigenpairs(graph: FrameworkGraph, conductances) -> tuple:
    """Eigendecomposition of the weighted graph Laplacian, ascending.

    Returns (eigenvalues, eigenvectors) of incidence^T diag(c) incidence,
    eigenvectors as columns.  The all-ones vector always has eigenvalue 0.
    """
    c = np.asarray(conductances, dtype=float)
    if c.shape != (graph.m,):
        raise FrameworkError(f"expected {graph.m} conductances, got shape {c.shape}")
    if not np.all(c > 0.0):
        raise FrameworkError("conductances must be positive")
    inc = incidence_matrix(graph)
    lap = inc.T @ (c[:, None] * inc)
    values, vectors = np.linalg.eigh(lap)
    return values, vectors
