"""Two-phase dense tableau simplex with verifiable primal/dual certificates.

Solves min c.x subject to B x = p with per-variable sign restrictions
(nonnegative by default, unrestricted where ``free_mask`` is set).  Free
variables are split into differences of nonnegative pairs internally; callers
see net values only.  Determinism: identical inputs produce identical pivot
sequences and outputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IterationLimit
from .linalg import DEFAULT_TOLERANCES, ToleranceConfig, as_matrix, as_vector

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_PIVOT_EPS = 1e-10     # entries at or below this never serve as pivots
_PRICE_EPS = 1e-9      # reduced-cost threshold for optimality
_RATIO_TIE = 1e-9      # ratio-test tie window
_CLEAN_EPS = 1e-11     # tiny negatives in rhs / primal values snapped to zero
_DEGENERATE_RUN = 10   # zero-step pivots tolerated before Bland's rule


@dataclass
class StandardLp:
    """min objective . x  s.t.  constraints @ x = rhs, x >= 0 except free."""

    objective: np.ndarray
    constraints: np.ndarray
    rhs: np.ndarray
    free_mask: np.ndarray | None = None

    def __post_init__(self):
        self.constraints = as_matrix(self.constraints)
        m, n = self.constraints.shape
        self.objective = as_vector(self.objective, n)
        self.rhs = as_vector(self.rhs, m)
        if self.free_mask is None:
            self.free_mask = np.zeros(n, dtype=bool)
        else:
            self.free_mask = np.asarray(self.free_mask, dtype=bool).reshape(-1)
            if self.free_mask.size != n:
                raise ValueError("free_mask length must match the variable count")


@dataclass
class LpSolution:
    """Solver outcome; primal/dual fields are populated when status is optimal.

    When optimal: x is primal feasible, y solves the dual equations through
    s = c - B^T y with s >= 0 on sign-restricted variables, x.s vanishes
    componentwise, and the primal and dual objectives agree.  ``ray`` carries
    an unbounded improving direction when status is unbounded.
    """

    status: str
    x: np.ndarray | None = None
    y: np.ndarray | None = None
    reduced_costs: np.ndarray | None = None
    objective_value: float | None = None
    ray: np.ndarray | None = None
    pivots: int = 0


class _Tableau:
    """Dense simplex tableau over structural plus artificial columns."""

    def __init__(self, rows: np.ndarray, rhs: np.ndarray, n_struct: int):
        m = rows.shape[0]
        self.m = m
        self.n_struct = n_struct
        self.T = np.zeros((m + 1, n_struct + m + 1))
        self.T[:m, :n_struct] = rows
        self.T[:m, n_struct:n_struct + m] = np.eye(m)
        self.T[:m, -1] = rhs
        self.basis = list(range(n_struct, n_struct + m))
        self.pivots = 0

    def set_costs(self, costs: np.ndarray) -> None:
        T = self.T
        T[-1, :-1] = costs
        T[-1, -1] = 0.0
        for r, bv in enumerate(self.basis):
            cb = costs[bv]
            if cb != 0.0:
                T[-1, :] -= cb * T[r, :]
        T[-1, self.basis] = 0.0

    def pivot(self, r: int, j: int) -> None:
        T = self.T
        T[r, :] /= T[r, j]
        col = T[:, j].copy()
        col[r] = 0.0
        T -= np.outer(col, T[r, :])
        T[:, j] = 0.0
        T[r, j] = 1.0
        self.basis[r] = j
        self.pivots += 1
        rhs = T[:self.m, -1]
        tiny = (rhs < 0.0) & (rhs > -_CLEAN_EPS)
        if tiny.any():
            rhs[tiny] = 0.0

    def run(self, allow: np.ndarray, max_pivots: int) -> int | None:
        """Pivot to optimality; returns the entering column when unbounded."""
        T = self.T
        m = self.m
        degenerate_run = 0
        while True:
            reduced = T[-1, :-1]
            if degenerate_run >= _DEGENERATE_RUN:
                # Bland's rule: smallest eligible index, guarantees termination.
                candidates = np.flatnonzero(allow & (reduced < -_PRICE_EPS))
                if candidates.size == 0:
                    return None
                j = int(candidates[0])
            else:
                priced = np.where(allow, reduced, np.inf)
                j = int(np.argmin(priced))
                if priced[j] >= -_PRICE_EPS:
                    return None
            col = T[:m, j]
            positive = col > _PIVOT_EPS
            if not positive.any():
                return j
            ratios = np.full(m, np.inf)
            ratios[positive] = T[:m, -1][positive] / col[positive]
            best = float(ratios.min())
            tied = np.flatnonzero(ratios <= best + _RATIO_TIE)
            r = int(min(tied, key=lambda i: self.basis[i]))
            if self.pivots >= max_pivots:
                raise IterationLimit(f"pivot limit {max_pivots} reached")
            self.pivot(r, j)
            degenerate_run = degenerate_run + 1 if best <= _RATIO_TIE else 0


def _fold_free(v_ext: np.ndarray, n: int, free_idx: np.ndarray) -> np.ndarray:
    v = v_ext[:n].copy()
    if free_idx.size:
        v[free_idx] -= v_ext[n:]
    return v


def solve(lp: StandardLp, tol: ToleranceConfig = DEFAULT_TOLERANCES,
          max_pivots: int | None = None) -> LpSolution:
    """Two-phase simplex solve of a standard-form LP.

    Dantzig pricing with smallest-index tie breaks; Bland's rule engages after
    a run of degenerate pivots.  Infeasible iff the phase-1 optimum exceeds
    ``tol.feas_tol``.  Raises ``IterationLimit`` rather than returning a
    silently wrong answer when the pivot budget is exhausted.
    """
    B, p, c = lp.constraints, lp.rhs, lp.objective
    m, n = B.shape
    free_idx = np.flatnonzero(lp.free_mask)
    if free_idx.size:
        B_ext = np.hstack([B, -B[:, free_idx]])
        c_ext = np.concatenate([c, -c[free_idx]])
    else:
        B_ext = B
        c_ext = c
    n_ext = n + free_idx.size
    if max_pivots is None:
        max_pivots = 50 * (m + n_ext)

    # Orient rows so phase 1 starts from a feasible artificial basis.
    sigma = np.where(p < 0.0, -1.0, 1.0)
    tab = _Tableau(B_ext * sigma[:, None], p * sigma, n_ext)
    art0 = n_ext

    phase1_costs = np.zeros(n_ext + m)
    phase1_costs[art0:] = 1.0
    tab.set_costs(phase1_costs)
    if tab.run(np.ones(n_ext + m, dtype=bool), max_pivots) is not None:
        # The phase-1 objective is bounded below by zero; an unbounded report
        # can only come from numerical breakdown.
        raise IterationLimit("phase 1 reported an unbounded direction")
    if -tab.T[-1, -1] > tol.feas_tol:
        return LpSolution(status=INFEASIBLE, pivots=tab.pivots)

    # Swap basic artificials for structural columns where the row allows it.
    # Rows that stay artificial are redundant; their artificial sits at level
    # zero with cost zero in phase 2, pinning the matching dual value to zero.
    for r, bv in enumerate(list(tab.basis)):
        if bv >= art0:
            row = tab.T[r, :n_ext]
            j = int(np.argmax(np.abs(row)))
            if abs(row[j]) > _PIVOT_EPS:
                tab.pivot(r, j)

    phase2_costs = np.zeros(n_ext + m)
    phase2_costs[:n_ext] = c_ext
    tab.set_costs(phase2_costs)
    allow = np.zeros(n_ext + m, dtype=bool)
    allow[:n_ext] = True
    entering = tab.run(allow, max_pivots)
    if entering is not None:
        ray_ext = np.zeros(n_ext)
        ray_ext[entering] = 1.0
        for r, bv in enumerate(tab.basis):
            if bv < n_ext:
                ray_ext[bv] = -tab.T[r, entering]
        return LpSolution(status=UNBOUNDED, ray=_fold_free(ray_ext, n, free_idx),
                          pivots=tab.pivots)

    x_ext = np.zeros(n_ext)
    for r, bv in enumerate(tab.basis):
        if bv < n_ext:
            x_ext[bv] = tab.T[r, -1]
    x_ext[(x_ext < 0.0) & (x_ext > -_CLEAN_EPS)] = 0.0
    x = _fold_free(x_ext, n, free_idx)

    # Dual values from the final basis: solve M^T y = c_B over the row-flipped
    # constraint matrix, then undo the row orientation.
    flipped = B_ext * sigma[:, None]
    M = np.empty((m, m))
    c_basis = np.empty(m)
    for r, bv in enumerate(tab.basis):
        if bv < n_ext:
            M[:, r] = flipped[:, bv]
            c_basis[r] = c_ext[bv]
        else:
            M[:, r] = 0.0
            M[bv - art0, r] = 1.0
            c_basis[r] = 0.0
    try:
        y = sigma * np.linalg.solve(M.T, c_basis)
    except np.linalg.LinAlgError:
        y = sigma * np.linalg.lstsq(M.T, c_basis, rcond=None)[0]

    return LpSolution(status=OPTIMAL, x=x, y=y,
                      reduced_costs=c - B.T @ y,
                      objective_value=float(c @ x),
                      pivots=tab.pivots)


def verify_certificate(lp: StandardLp, sol: LpSolution,
                       tol: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
    """Re-check an optimal solution by direct residual evaluation.

    Independent of the solve path: recomputes every certificate condition
    (primal feasibility, dual feasibility, complementary slackness, matching
    objectives) from the raw problem data.
    """
    if sol.status != OPTIMAL or sol.x is None or sol.y is None:
        return False
    B, p, c = lp.constraints, lp.rhs, lp.objective
    x, y = sol.x, sol.y
    if not (np.isfinite(x).all() and np.isfinite(y).all()):
        return False
    free = lp.free_mask
    restricted = ~free
    if np.abs(B @ x - p).max() > tol.feas_tol * max(1.0, float(np.abs(p).max())):
        return False
    if restricted.any() and x[restricted].min() < -tol.feas_tol:
        return False
    s = c - B.T @ y
    if restricted.any() and s[restricted].min() < -tol.feas_tol:
        return False
    if free.any() and np.abs(s[free]).max() > tol.feas_tol:
        return False
    if np.abs(x * s).max(initial=0.0) > tol.gap_tol:
        return False
    obj = float(c @ x)
    if abs(obj - float(p @ y)) > tol.gap_tol * max(1.0, abs(obj)):
        return False
    return True
