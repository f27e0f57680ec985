"""Brute-force ground truth for sparsest nonnegative solutions.

Enumerates supports of increasing size, testing each candidate subsystem
A_S z = b, z >= 0 for feasibility with the verified LP core.  Deliberately
exhaustive and desk-scale: the enumeration is the oracle other certificates
are checked against, so no pruning shortcuts are taken.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

import numpy as np

from .errors import BudgetExceeded, NoSolutionWithin
from .linalg import (DEFAULT_SUBSET_BUDGET, DEFAULT_TOLERANCES, IndexSet,
                     ToleranceConfig, as_matrix, as_vector, rank)
from .rsp import (RspCertificate, UniquenessVerdict, Verdict, check_rsp_at,
                  solve_and_certify, support_of, _checked_solve)
from .simplex import INFEASIBLE, StandardLp


@dataclass
class SparsestReport:
    """All minimal-size supports admitting a nonnegative solution.

    Each support carries one representative solution (a vertex of its
    subsystem) and a flag telling whether the support columns have full
    column rank, i.e. whether the representative is the only solution within
    that support.
    """

    k_star: int
    supports: list[IndexSet]
    representatives: list[np.ndarray]
    unique_within_support: list[bool]
    subsets_checked: int


class SystemLabel(str, Enum):
    G1 = "G1"  # unique least-l1 solution, unique sparsest solution
    G2 = "G2"  # unique least-l1 solution, multiple sparsest solutions
    G3 = "G3"  # multiple least-l1 solutions
    INDETERMINATE = "indeterminate"


@dataclass
class SystemClass:
    label: SystemLabel
    l1_unique: bool | None
    sparsest_count: int
    l1_solution: np.ndarray
    l1_verdict: UniquenessVerdict
    sparsest: SparsestReport


class EquivalenceStatus(str, Enum):
    STRONGLY_EQUIVALENT = "strongly_equivalent"
    EQUIVALENT = "equivalent"
    NOT_EQUIVALENT = "not_equivalent"
    INDETERMINATE = "indeterminate"


@dataclass
class EquivalenceVerdict:
    """Whether minimizing the l1 norm solves the sparsity problem.

    ``equivalent`` is the graded reading: strong equivalence (a unique
    sparsest solution that is also the unique l1 optimum) implies it.
    """

    status: EquivalenceStatus
    passing_support: IndexSet | None
    certificates: list[RspCertificate]
    sparsest: SparsestReport

    @property
    def equivalent(self) -> bool:
        return self.status in (EquivalenceStatus.EQUIVALENT,
                               EquivalenceStatus.STRONGLY_EQUIVALENT)

    @property
    def strongly_equivalent(self) -> bool:
        return self.status is EquivalenceStatus.STRONGLY_EQUIVALENT


def sparsest_supports(A, b, max_k: int | None = None,
                      tol: ToleranceConfig = DEFAULT_TOLERANCES,
                      budget: int = DEFAULT_SUBSET_BUDGET) -> SparsestReport:
    """Enumerate every support of minimal size that solves A x = b, x >= 0.

    Feasibility per support is decided by the LP core (phase 1 is an exact
    feasibility certificate up to tolerances).  A representative whose exact
    support turns out smaller than the enumerated subset is attributed to
    that smaller support and deduplicated, since the count of nonzeros is a
    property of the point, not of the enumeration set.
    """
    A = as_matrix(A)
    m, n = A.shape
    b = as_vector(b, m)
    if max_k is None:
        max_k = n
    if not 0 <= max_k <= n:
        raise ValueError("max_k must lie in [0, n]")
    if np.abs(b).max(initial=0.0) <= tol.feas_tol:
        return SparsestReport(0, [()], [np.zeros(n)], [True], 0)
    checked = 0
    planned = 0
    for k in range(1, max_k + 1):
        planned += math.comb(n, k)
        if planned > budget:
            raise BudgetExceeded(
                f"support search needs {planned} subsets, budget is {budget}")
        found: dict[IndexSet, tuple[np.ndarray, bool]] = {}
        for S in combinations(range(n), k):
            checked += 1
            sub = StandardLp(np.zeros(k), A[:, list(S)], b)
            sol = _checked_solve(sub, tol)
            if sol.status == INFEASIBLE:
                continue
            z = np.zeros(n)
            z[list(S)] = np.maximum(sol.x, 0.0)
            exact = support_of(z, tol)
            if exact not in found:
                found[exact] = (z, rank(A, exact, tol) == len(exact))
        if found:
            k_star = min(len(S) for S in found)
            keep = sorted(S for S in found if len(S) == k_star)
            return SparsestReport(
                k_star=k_star,
                supports=list(keep),
                representatives=[found[S][0] for S in keep],
                unique_within_support=[found[S][1] for S in keep],
                subsets_checked=checked)
    raise NoSolutionWithin(max_k)


def classify_system(A, b, tol: ToleranceConfig = DEFAULT_TOLERANCES,
                    budget: int = DEFAULT_SUBSET_BUDGET) -> SystemClass:
    """Place the system in the uniqueness taxonomy G1 / G2 / G3.

    G1: unique l1 optimum and a single sparsest support; G2: unique l1
    optimum with several sparsest supports; G3: the l1 optimum itself is not
    unique.  A marginal uniqueness verdict is reported as indeterminate
    rather than guessed.
    """
    x, verdict = solve_and_certify(A, b, tol)
    report = sparsest_supports(A, b, tol=tol, budget=budget)
    count = len(report.supports)
    if verdict.unique is Verdict.YES:
        label = SystemLabel.G1 if count == 1 else SystemLabel.G2
        l1_unique = True
    elif verdict.unique is Verdict.NO:
        label = SystemLabel.G3
        l1_unique = False
    else:
        label = SystemLabel.INDETERMINATE
        l1_unique = None
    return SystemClass(label=label, l1_unique=l1_unique, sparsest_count=count,
                       l1_solution=x, l1_verdict=verdict, sparsest=report)


def equivalence_verdict(A, b, tol: ToleranceConfig = DEFAULT_TOLERANCES,
                        budget: int = DEFAULT_SUBSET_BUDGET) -> EquivalenceVerdict:
    """Decide whether the l1 optimum is a sparsest nonnegative solution.

    Runs the range-space certificate at every sparsest support: equivalence
    holds iff some sparsest support passes (at most one ever can), and holds
    strongly iff that support is the only sparsest one.
    """
    A = as_matrix(A)
    report = sparsest_supports(A, b, tol=tol, budget=budget)
    certificates = [check_rsp_at(A, S, tol) for S in report.supports]
    passing = [c.support for c in certificates if c.holds is Verdict.YES]
    marginal = [c.support for c in certificates if c.holds is Verdict.MARGINAL]
    if passing:
        status = (EquivalenceStatus.STRONGLY_EQUIVALENT
                  if len(report.supports) == 1 else EquivalenceStatus.EQUIVALENT)
        chosen = passing[0]
    elif marginal:
        status = EquivalenceStatus.INDETERMINATE
        chosen = None
    else:
        status = EquivalenceStatus.NOT_EQUIVALENT
        chosen = None
    return EquivalenceVerdict(status=status, passing_support=chosen,
                              certificates=certificates, sparsest=report)
