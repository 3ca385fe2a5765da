"""Self stresses and the prestress-rigidity certificate.

A self stress is a left null vector w of dg|_p: edge tensions in perfect
equilibrium at every node.  The stress matrix Omega_w spreads the w-weighted
graph Laplacian across the d spatial dimensions; positive definiteness of
F^T Omega_w F on a flex basis F certifies prestress rigidity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .framework import Configuration, FrameworkError, FrameworkGraph, MemberConstraintSystem
from .rigidity import (
    RANK_REL_TOL,
    incidence_matrix,
    jacobian_at,
    numerical_nullspace,
    nullspace_decomposition,
)

#: strict-inequality margin for cable/strut sign checks and zero-entry reports
SIGN_MARGIN = 1e-9

#: number of seeded random starts for the k >= 2 eigenvalue maximization
SEARCH_STARTS = 20


@dataclass(frozen=True)
class SelfStress:
    """One self-stress vector, scaled so its largest entry magnitude is 1.

    The sign is fixed by making the entry of the first member carrying a
    nonzero stress positive; pinned_index records the first entry of
    magnitude 1.
    """

    w: np.ndarray
    pinned_index: int

    def pinned_member(self, graph: FrameworkGraph):
        i, j, _ = graph.members[self.pinned_index]
        return (i, j)


@dataclass(frozen=True)
class StressMatrix:
    omega: np.ndarray


@dataclass(frozen=True)
class PrestressCertificate:
    """Outcome of the prestress search.

    verdict is one of {found, infinitesimally_rigid, no_self_stress,
    not_found}; the remaining fields are populated when a stress basis
    exists (reduced-matrix data requires a nonempty flex space too).
    """

    verdict: str
    coefficients: np.ndarray | None = None
    stress: np.ndarray | None = None
    reduced: np.ndarray | None = None
    min_eigenvalue: float | None = None
    cables_positive: bool | None = None
    struts_negative: bool | None = None
    sign_violations: tuple = ()
    zero_members: tuple = ()

    def to_json_dict(self) -> dict:
        out = {"verdict": self.verdict}
        if self.coefficients is not None:
            out["coefficients"] = list(self.coefficients)
        if self.stress is not None:
            out["stress"] = list(self.stress)
        if self.reduced is not None:
            out["reduced_matrix"] = self.reduced.tolist()
            out["reduced_eigenvalues"] = np.linalg.eigvalsh(self.reduced).tolist()
        if self.min_eigenvalue is not None:
            out["min_eigenvalue"] = self.min_eigenvalue
        if self.cables_positive is not None:
            out["cables_positive"] = self.cables_positive
            out["struts_negative"] = self.struts_negative
            out["sign_violations"] = [list(m) for m in self.sign_violations]
            out["zero_members"] = [list(m) for m in self.zero_members]
        return out


def self_stress_basis(sys: MemberConstraintSystem, p: Configuration,
                      tol_rel: float = RANK_REL_TOL) -> list:
    """Basis of the left nullspace of dg|_p, one SelfStress per dimension.

    Starts from an orthonormal basis, then rescales each vector so the
    largest entry magnitude is 1 and the first stressed member is positive.
    """
    dg = jacobian_at(sys, p)
    left = numerical_nullspace(dg.T, tol_rel)
    out = []
    for col in range(left.shape[1]):
        w = left[:, col].copy()
        idx = int(np.argmax(np.abs(w)))
        w /= np.abs(w[idx])
        nonzero = np.nonzero(np.abs(w) > SIGN_MARGIN)[0]
        if nonzero.size and w[nonzero[0]] < 0.0:
            w = -w
        out.append(SelfStress(w=w, pinned_index=idx))
    return out


def stress_matrix(graph: FrameworkGraph, w) -> StressMatrix:
    """Omega_w: the w-weighted graph Laplacian Kronecker-spread by I_d."""
    w = np.asarray(getattr(w, "w", w), dtype=float)
    if w.shape != (graph.m,):
        raise FrameworkError(f"expected {graph.m} stress entries, got shape {w.shape}")
    inc = incidence_matrix(graph)
    lap = inc.T @ (w[:, None] * inc)
    return StressMatrix(omega=np.kron(lap, np.eye(graph.d)))


def stiffness_and_energy(sys: MemberConstraintSystem, p: Configuration,
                         c, w) -> tuple:
    """K_c = dg^T diag(c) dg and the energy Hessian H = Omega_w + K_c."""
    c = np.asarray(c, dtype=float)
    if c.shape != (sys.m,):
        raise FrameworkError(f"expected {sys.m} material constants, got shape {c.shape}")
    if np.any(c < 0.0):
        raise FrameworkError("material constants must be nonnegative")
    dg = jacobian_at(sys, p)
    K = dg.T @ (c[:, None] * dg)
    omega = stress_matrix(sys.graph, w).omega
    return K, omega + K


def _min_eig_and_gradient(reduced_parts, a):
    M = sum(ai * Mi for ai, Mi in zip(a, reduced_parts))
    vals, vecs = np.linalg.eigh(M)
    u = vecs[:, 0]
    grad = np.array([u @ Mi @ u for Mi in reduced_parts])
    return vals[0], grad


def _maximize_min_eigenvalue(reduced_parts, rng, starts=SEARCH_STARTS):
    """Multi-start projected gradient ascent of lambda_min over the unit sphere."""
    k = len(reduced_parts)
    best_val, best_a = -np.inf, None
    for _ in range(starts):
        a = rng.normal(size=k)
        a /= np.linalg.norm(a)
        val, grad = _min_eig_and_gradient(reduced_parts, a)
        step = 0.5
        for _ in range(200):
            cand = a + step * grad
            norm = np.linalg.norm(cand)
            if norm == 0.0:
                break
            cand /= norm
            cand_val, cand_grad = _min_eig_and_gradient(reduced_parts, cand)
            if cand_val > val:
                a, val, grad = cand, cand_val, cand_grad
                step = min(step * 1.5, 2.0)
            else:
                step *= 0.5
                if step < 1e-12:
                    break
        if val > best_val:
            best_val, best_a = val, a
    return best_a


def prestress_certificate(sys: MemberConstraintSystem, p: Configuration,
                          partition=None, tol_rel: float = RANK_REL_TOL,
                          seed=0) -> PrestressCertificate:
    """Search for a self stress whose stress matrix is positive definite on
    the flex space.

    Empty flex space short-circuits to infinitesimally_rigid, empty stress
    basis to no_self_stress.  With one basis stress the sign choice is
    exhaustive; otherwise a seeded multi-start search maximizes the minimum
    eigenvalue over unit coefficient vectors.  Positive definiteness of the
    winner is re-verified from scratch, and cable/strut sign feasibility is
    reported against `partition` (defaults to the member kinds of sys).
    """
    graph = sys.graph
    kinds = tuple(partition) if partition is not None else graph.kinds()
    if len(kinds) != graph.m:
        raise FrameworkError(f"expected {graph.m} member kinds, got {len(kinds)}")

    decomp = nullspace_decomposition(sys, p, tol_rel)
    F = decomp.flexes
    if F.shape[1] == 0:
        return PrestressCertificate(verdict="infinitesimally_rigid")
    basis = self_stress_basis(sys, p, tol_rel)
    if not basis:
        return PrestressCertificate(verdict="no_self_stress")

    reduced_parts = [F.T @ stress_matrix(graph, s).omega @ F for s in basis]
    if len(basis) == 1:
        candidates = [np.array([1.0]), np.array([-1.0])]
        a = max(candidates, key=lambda c: _min_eig_and_gradient(reduced_parts, c)[0])
    else:
        rng = np.random.default_rng(seed)
        a = _maximize_min_eigenvalue(reduced_parts, rng)

    stress = sum(ai * s.w for ai, s in zip(a, basis))
    # independent re-verification: rebuild the reduced matrix from the
    # combined stress rather than reusing the search's running value
    reduced = F.T @ stress_matrix(graph, stress).omega @ F
    min_eig = float(np.linalg.eigvalsh(reduced)[0])

    violations = []
    zero_members = []
    cables_ok = True
    struts_ok = True
    for k, ((i, j, _), kind) in enumerate(zip(graph.members, kinds)):
        wk = stress[k]
        if abs(wk) <= SIGN_MARGIN:
            zero_members.append((i, j))
        if kind == "cable" and wk <= SIGN_MARGIN:
            violations.append((i, j))
            cables_ok = False
        elif kind == "strut" and wk >= -SIGN_MARGIN:
            violations.append((i, j))
            struts_ok = False

    return PrestressCertificate(
        verdict="found" if min_eig > 0.0 else "not_found",
        coefficients=np.asarray(a, dtype=float),
        stress=np.asarray(stress, dtype=float),
        reduced=reduced,
        min_eigenvalue=min_eig,
        cables_positive=cables_ok,
        struts_negative=struts_ok,
        sign_violations=tuple(violations),
        zero_members=tuple(zero_members),
    )
