"""Range space property certificates and uniqueness verdicts.

A nonnegative solution x of A x = b is the unique least-l1-norm nonnegative
solution iff (a) some eta in the range of A^T equals 1 on the support of x and
stays strictly below 1 elsewhere, and (b) the support columns of A are
linearly independent.  Condition (a) reduces to one small LP per support; this
module certifies both conditions with re-checkable witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (CertificateUnavailable, Infeasible, IterationLimit,
                     NonpositiveWeight, NotASolution, NotNonnegative, Unbounded)
from .linalg import (DEFAULT_TOLERANCES, IndexSet, ToleranceConfig,
                     as_matrix, as_vector, augmented_rank_details, complement,
                     normalize_support, rank_details)
from .simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, LpSolution, StandardLp, solve, verify_certificate


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    MARGINAL = "marginal"


class FailureReason(str, Enum):
    NONE = "none"
    RSP_FAILED = "rsp_failed"
    RANK_DEFICIENT = "rank_deficient"
    BOTH = "both"


@dataclass
class RspCertificate:
    """Outcome of the margin LP at one support.

    t_star is the optimal margin: the smallest ceiling t such that some
    eta = A^T y equals 1 on the support and stays at or below t off it
    (t clamped below at -1 to keep the LP bounded).  The property holds
    strictly iff t_star < 1; verdicts leave a tolerance band around 1.
    Witnesses are present for yes/marginal verdicts and satisfy
    eta = A^T y, eta = 1 on the support, eta <= 1 - rsp_margin off it.
    """

    holds: Verdict
    support: IndexSet
    witness_eta: np.ndarray | None
    witness_y: np.ndarray | None
    t_star: float | None
    lp_status: str


@dataclass
class UniquenessVerdict:
    """Combined range-space and rank verdict for one candidate solution."""

    unique: Verdict
    rsp: RspCertificate
    full_column_rank: bool
    rank_found: int
    augmented_full_column_rank: bool
    rank_marginal: bool
    reason: FailureReason


@dataclass
class LpSparsestResult:
    """Outcome of the sparsest-LP-optimum pipeline."""

    d_star: float
    augmented_matrix: np.ndarray
    augmented_rhs: np.ndarray
    x: np.ndarray
    verdict: UniquenessVerdict


def support_of(x, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> IndexSet:
    """Indices with x_i > zero_tol; raises if any entry is meaningfully negative."""
    x = as_vector(x)
    if x.size and x.min() < -tol.zero_tol:
        i = int(np.argmin(x))
        raise NotNonnegative(f"entry {i} is {x[i]:.3g} < -zero_tol")
    return tuple(int(i) for i in np.flatnonzero(x > tol.zero_tol))


def _checked_solve(lp: StandardLp, tol: ToleranceConfig) -> LpSolution:
    # Every downstream certificate re-validates its solve before trusting it.
    try:
        sol = solve(lp, tol)
    except IterationLimit as exc:
        raise CertificateUnavailable(str(exc)) from exc
    if sol.status == OPTIMAL and not verify_certificate(lp, sol, tol):
        raise CertificateUnavailable("optimal solve failed its certificate re-check")
    return sol


def check_rsp_at(A, support, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> RspCertificate:
    """Certify the range space property at a support via the margin LP.

    Solves min t s.t. A_S^T y = 1 on S, A_j^T y <= t off S, t >= -1, with y
    free.  An empty support holds vacuously (eta = 0).  Yes iff
    t* <= 1 - rsp_margin; no iff the equalities are inconsistent or t* is
    within feas_tol of 1 or above; marginal in the band between.
    """
    A = as_matrix(A)
    m, n = A.shape
    S = normalize_support(support, n)
    if not S:
        return RspCertificate(Verdict.YES, S, np.zeros(n), np.zeros(m), -1.0, OPTIMAL)
    Sc = complement(S, n)
    k, kc = len(S), len(Sc)
    nv = m + 1 + kc  # y (free), shifted margin t + 1 (nonnegative), slacks
    Bm = np.zeros((k + kc, nv))
    Bm[:k, :m] = A[:, list(S)].T
    if kc:
        Bm[k:, :m] = A[:, list(Sc)].T
        Bm[k:, m] = -1.0
        Bm[k:, m + 1:] = np.eye(kc)
    rhs = np.concatenate([np.ones(k), -np.ones(kc)])
    cost = np.zeros(nv)
    cost[m] = 1.0
    free = np.zeros(nv, dtype=bool)
    free[:m] = True
    sol = _checked_solve(StandardLp(cost, Bm, rhs, free), tol)
    if sol.status == INFEASIBLE:
        return RspCertificate(Verdict.NO, S, None, None, None, INFEASIBLE)
    if sol.status != OPTIMAL:
        # The shifted margin is bounded below by zero, so this cannot happen
        # unless the solve broke down numerically.
        raise CertificateUnavailable(f"margin LP returned {sol.status}")
    t_star = float(sol.objective_value) - 1.0
    if t_star <= 1.0 - tol.rsp_margin:
        holds = Verdict.YES
    elif t_star >= 1.0 - tol.feas_tol:
        holds = Verdict.NO
    else:
        holds = Verdict.MARGINAL
    if holds is Verdict.NO:
        return RspCertificate(holds, S, None, None, t_star, sol.status)
    y = sol.x[:m].copy()
    return RspCertificate(holds, S, A.T @ y, y, t_star, sol.status)


def verify_rsp_witness(A, support, eta, y,
                       tol: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
    """Re-check a range-space witness without solving anything."""
    A = as_matrix(A)
    n = A.shape[1]
    S = normalize_support(support, n)
    eta = as_vector(eta, n)
    y = as_vector(y, A.shape[0])
    if np.abs(eta - A.T @ y).max(initial=0.0) > tol.feas_tol:
        return False
    if S and np.abs(eta[list(S)] - 1.0).max() > tol.feas_tol:
        return False
    Sc = complement(S, n)
    if Sc and eta[list(Sc)].max() > 1.0 - tol.rsp_margin:
        return False
    return True


def _require_solution(A: np.ndarray, b: np.ndarray, x: np.ndarray,
                      tol: ToleranceConfig) -> None:
    if x.size and x.min() < -tol.zero_tol:
        i = int(np.argmin(x))
        raise NotNonnegative(f"entry {i} is {x[i]:.3g} < -zero_tol")
    residual = np.abs(A @ x - b).max(initial=0.0)
    if residual > tol.feas_tol * max(1.0, float(np.abs(b).max(initial=0.0))):
        raise NotASolution(f"candidate violates the system by {residual:.3g}")


def _combine(rsp_cert: RspCertificate, rank_res, aug_res, k: int) -> UniquenessVerdict:
    full = rank_res.rank == k
    aug_full = aug_res.rank == k
    rsp_no = rsp_cert.holds is Verdict.NO
    if rsp_no and not full:
        reason = FailureReason.BOTH
    elif rsp_no:
        reason = FailureReason.RSP_FAILED
    elif not full:
        reason = FailureReason.RANK_DEFICIENT
    else:
        reason = FailureReason.NONE
    if rsp_cert.holds is Verdict.YES and full:
        unique = Verdict.YES
    elif rsp_cert.holds is Verdict.MARGINAL and full:
        unique = Verdict.MARGINAL
    else:
        unique = Verdict.NO
    return UniquenessVerdict(unique=unique, rsp=rsp_cert,
                             full_column_rank=full, rank_found=rank_res.rank,
                             augmented_full_column_rank=aug_full,
                             rank_marginal=rank_res.marginal or aug_res.marginal,
                             reason=reason)


def certify_uniqueness(A, b, x, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> UniquenessVerdict:
    """Decide whether x is the unique least-l1-norm nonnegative solution.

    Validates that x actually solves A x = b nonnegatively, then combines the
    range-space certificate at the support of x with the full-column-rank
    test of the support columns.  The ones-row-augmented rank is reported as
    well; the two rank tests agree whenever the range-space property holds.
    """
    A = as_matrix(A)
    b = as_vector(b, A.shape[0])
    x = as_vector(x, A.shape[1])
    _require_solution(A, b, x, tol)
    S = support_of(x, tol)
    cert = check_rsp_at(A, S, tol)
    return _combine(cert, rank_details(A, S, tol),
                    augmented_rank_details(A, S, tol), len(S))


def solve_l1(A, b, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> np.ndarray:
    """An optimal point of min sum(x) s.t. A x = b, x >= 0.

    For nonnegative x the l1 norm is the plain coordinate sum, so this is one
    standard-form LP.  Raises ``Infeasible`` when no nonnegative solution
    exists.  When the optimum is not unique any optimal vertex may be
    returned.
    """
    A = as_matrix(A)
    b = as_vector(b, A.shape[0])
    sol = _checked_solve(StandardLp(np.ones(A.shape[1]), A, b), tol)
    if sol.status == INFEASIBLE:
        raise Infeasible("no nonnegative solution to the system")
    if sol.status != OPTIMAL:
        # The coordinate sum is bounded below by zero on the feasible set.
        raise CertificateUnavailable(f"l1 LP returned {sol.status}")
    return sol.x


def solve_and_certify(A, b, tol: ToleranceConfig = DEFAULT_TOLERANCES):
    """Minimize the l1 norm, then certify uniqueness at the returned point."""
    x = solve_l1(A, b, tol)
    return x, certify_uniqueness(A, b, x, tol)


def _scaled_by_weights(A: np.ndarray, w) -> tuple[np.ndarray, np.ndarray]:
    w = as_vector(w, A.shape[1])
    if w.size and w.min() <= 0.0:
        i = int(np.argmin(w))
        raise NonpositiveWeight(f"weight {i} is {w[i]:.3g}, must be positive")
    return A / w, w


def check_weighted_rsp_at(A, support, w,
                          tol: ToleranceConfig = DEFAULT_TOLERANCES) -> RspCertificate:
    """Weighted range-space certificate: eta = w on S, eta < w off S.

    A weighted l1 objective is a plain l1 objective for the column-rescaled
    matrix A W^-1, so the certificate is computed for that scaled matrix and
    its witness lives in the scaled coordinates.
    """
    A = as_matrix(A)
    scaled, _ = _scaled_by_weights(A, w)
    return check_rsp_at(scaled, support, tol)


def certify_weighted_uniqueness(A, b, w, x,
                                tol: ToleranceConfig = DEFAULT_TOLERANCES) -> UniquenessVerdict:
    """Uniqueness of x for the weighted l1 objective with positive weights w.

    Holds iff the weighted range-space certificate passes at the support of x
    and the support columns of A have full column rank (column rescaling does
    not change rank, so the rank test runs on A itself).
    """
    A = as_matrix(A)
    b = as_vector(b, A.shape[0])
    x = as_vector(x, A.shape[1])
    scaled, _ = _scaled_by_weights(A, w)
    _require_solution(A, b, x, tol)
    S = support_of(x, tol)
    cert = check_rsp_at(scaled, S, tol)
    return _combine(cert, rank_details(A, S, tol),
                    augmented_rank_details(A, S, tol), len(S))


def lp_sparsest_pipeline(A, b, c, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> LpSparsestResult:
    """Certify the sparsest optimal solution of min c.x s.t. A x = b, x >= 0.

    First solves the LP for its optimal value d*, then pins the objective by
    appending the row c^T x = d* and runs the l1 solve-and-certify on the
    augmented system.  The augmented range-space check asks for eta in the
    range of [A^T, c].
    """
    A = as_matrix(A)
    b = as_vector(b, A.shape[0])
    c = as_vector(c, A.shape[1])
    sol = _checked_solve(StandardLp(c, A, b), tol)
    if sol.status == INFEASIBLE:
        raise Infeasible("the LP has no nonnegative feasible point")
    if sol.status == UNBOUNDED:
        raise Unbounded("the LP objective is unbounded below")
    d_star = float(sol.objective_value)
    A_aug = np.vstack([A, c[None, :]])
    b_aug = np.append(b, d_star)
    x, verdict = solve_and_certify(A_aug, b_aug, tol)
    return LpSparsestResult(d_star=d_star, augmented_matrix=A_aug,
                            augmented_rhs=b_aug, x=x, verdict=verdict)
