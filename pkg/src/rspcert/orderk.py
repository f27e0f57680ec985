"""Order-K recovery certification by exhaustive subset enumeration.

Four graded matrix properties decide which sparse nonnegative vectors a
sensing matrix recovers through l1 minimization:

* rsp_k    - range-space certificate passes at every support of size <= K
             (uniform recovery of all K-sparse nonnegative vectors);
* wrsp_k   - passes at every full-column-rank support of size <= K, and some
             size-K support has full column rank;
* prsp_k   - passes at every support of size exactly K;
* pwrsp_k  - passes at every full-column-rank support of size exactly K.

Every verdict is cross-checkable against a brute-force recovery oracle that
actually plants a random positive vector on each support and re-solves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import BudgetExceeded
from .linalg import (DEFAULT_TOLERANCES, IndexSet, ToleranceConfig, as_matrix,
                     rank, spark)
from .oracle import sparsest_supports
from .rsp import Verdict, check_rsp_at, solve_and_certify

# Enumeration cap for LP-backed subset certification.  Each subset costs one
# LP solve, far more than the rank probes behind the spark search, so the
# default sits below the plain subset-count budget used there.
DEFAULT_CHECK_BUDGET = 1_000_000

RSP_K = "rsp"
WRSP_K = "wrsp"
PRSP_K = "prsp"
PWRSP_K = "pwrsp"


@dataclass
class RecoveryReport:
    """Aggregated verdict of one order-K property.

    ``counterexample`` is the first failing subset in enumeration order
    (sizes ascending, lexicographic within a size) and can be re-checked with
    a single ``check_rsp_at`` call.  A marginal subset downgrades the verdict
    to marginal unless a hard failure exists.  ``no_full_rank_subset`` marks
    the rank-restricted properties whose quantifier ranged over nothing
    (wrsp also fails outright in that case, since it requires a witnessable
    size-K support to exist).
    """

    property: str
    order: int
    holds: Verdict
    counterexample: IndexSet | None
    subsets_checked: int
    marginal_subsets: list[IndexSet] = field(default_factory=list)
    failures_per_size: dict[int, int] = field(default_factory=dict)
    no_full_rank_subset: bool = False


@dataclass
class RecoveryOracleReport:
    """Ground-truth recovery probe, replayable from its seed."""

    recovers: bool
    failing_support: IndexSet | None
    supports_checked: int
    trials_per_support: int
    seed: int


def _sizes(K: int, exact: bool) -> list[int]:
    return [K] if exact else list(range(1, K + 1))


def _ensure_budget(n: int, sizes: Iterable[int], budget: int) -> None:
    total = sum(math.comb(n, k) for k in sizes)
    if total > budget:
        raise BudgetExceeded(
            f"order-K certification needs {total} subset checks, budget is {budget}")


def _validate_order(A: np.ndarray, K: int) -> None:
    if not 1 <= K <= A.shape[1]:
        raise ValueError(f"order K={K} must lie in [1, {A.shape[1]}]")


def _certify_subsets(A: np.ndarray, K: int, tol: ToleranceConfig, budget: int,
                     prop: str, exact: bool, full_rank_only: bool) -> RecoveryReport:
    _validate_order(A, K)
    n = A.shape[1]
    sizes = _sizes(K, exact)
    _ensure_budget(n, sizes, budget)
    counterexample: IndexSet | None = None
    marginal: list[IndexSet] = []
    failures: dict[int, int] = {}
    checked = 0
    saw_eligible = False
    for k in sizes:
        for S in combinations(range(n), k):
            if full_rank_only and rank(A, S, tol) < k:
                continue
            saw_eligible = True
            checked += 1
            cert = check_rsp_at(A, S, tol)
            if cert.holds is Verdict.NO:
                failures[k] = failures.get(k, 0) + 1
                if counterexample is None:
                    counterexample = S
            elif cert.holds is Verdict.MARGINAL:
                marginal.append(S)
    if counterexample is not None:
        holds = Verdict.NO
    elif marginal:
        holds = Verdict.MARGINAL
    else:
        holds = Verdict.YES
    return RecoveryReport(property=prop, order=K, holds=holds,
                          counterexample=counterexample, subsets_checked=checked,
                          marginal_subsets=marginal, failures_per_size=failures,
                          no_full_rank_subset=full_rank_only and not saw_eligible)


def rsp_order_k(A, K: int, tol: ToleranceConfig = DEFAULT_TOLERANCES,
                budget: int = DEFAULT_CHECK_BUDGET) -> RecoveryReport:
    """Certify the range space property of order K.

    Every support size from 1 through K is enumerated: the property
    quantifies over all of them, and success at size k does not imply success
    at smaller sizes (per-size failure counts are recorded as evidence).
    """
    A = as_matrix(A)
    return _certify_subsets(A, K, tol, budget, RSP_K, exact=False, full_rank_only=False)


def wrsp_order_k(A, K: int, tol: ToleranceConfig = DEFAULT_TOLERANCES,
                 budget: int = DEFAULT_CHECK_BUDGET) -> RecoveryReport:
    """Certify the weak range space property of order K.

    Rank-deficient supports are skipped (the quantifier excludes them); the
    property additionally requires some size-K support with full column
    rank, so K above rank(A) fails with ``no_full_rank_subset`` set.
    """
    A = as_matrix(A)
    _validate_order(A, K)
    if rank(A, None, tol) < K:
        sizes = _sizes(K, exact=False)
        _ensure_budget(A.shape[1], sizes, budget)
        return RecoveryReport(property=WRSP_K, order=K, holds=Verdict.NO,
                              counterexample=None, subsets_checked=0,
                              no_full_rank_subset=True)
    return _certify_subsets(A, K, tol, budget, WRSP_K, exact=False, full_rank_only=True)


def prsp_order_k(A, K: int, tol: ToleranceConfig = DEFAULT_TOLERANCES,
                 budget: int = DEFAULT_CHECK_BUDGET) -> RecoveryReport:
    """Certify the partial range space property: supports of size exactly K."""
    A = as_matrix(A)
    return _certify_subsets(A, K, tol, budget, PRSP_K, exact=True, full_rank_only=False)


def pwrsp_order_k(A, K: int, tol: ToleranceConfig = DEFAULT_TOLERANCES,
                  budget: int = DEFAULT_CHECK_BUDGET) -> RecoveryReport:
    """Certify the partial weak property: full-rank supports of size exactly K.

    With no full-column-rank subset of size K the quantifier is empty and the
    property holds vacuously; the report flags that case.
    """
    A = as_matrix(A)
    return _certify_subsets(A, K, tol, budget, PWRSP_K, exact=True, full_rank_only=True)


def uniform_recovery_oracle(A, K: int, trials_per_support: int = 1,
                            tol: ToleranceConfig = DEFAULT_TOLERANCES,
                            seed: int = 0, budget: int = DEFAULT_CHECK_BUDGET,
                            exact_size: bool = False,
                            full_rank_only: bool = False) -> RecoveryOracleReport:
    """Ground-truth recovery probe, independent of the subset certifiers.

    For each support S of size up to K (exactly K with ``exact_size``;
    restricted to full-column-rank supports with ``full_rank_only``) draw
    vectors positive on S, take their measurements, and re-solve: recovery
    holds iff the solve certifies unique and reproduces the planted vector to
    1e-6.  One trial per support decides, because the certificate conditions
    depend only on the support; extra trials guard against tolerance noise.
    """
    A = as_matrix(A)
    _validate_order(A, K)
    n = A.shape[1]
    sizes = _sizes(K, exact_size)
    _ensure_budget(n, sizes, budget)
    rng = np.random.default_rng(seed)
    checked = 0
    for k in sizes:
        for S in combinations(range(n), k):
            if full_rank_only and rank(A, S, tol) < k:
                continue
            checked += 1
            for _ in range(max(1, trials_per_support)):
                planted = np.zeros(n)
                planted[list(S)] = rng.uniform(0.1, 1.0, size=k)
                recovered, verdict = solve_and_certify(A, A @ planted, tol)
                ok = (verdict.unique is Verdict.YES
                      and np.abs(recovered - planted).max() <= 1e-6)
                if not ok:
                    return RecoveryOracleReport(False, S, checked,
                                                trials_per_support, seed)
    return RecoveryOracleReport(True, None, checked, trials_per_support, seed)


def spark_consistency(A, K: int, tol: ToleranceConfig = DEFAULT_TOLERANCES,
                      budget: int = DEFAULT_CHECK_BUDGET) -> bool:
    """Check that a yes at order K forces K < spark(A); vacuously true otherwise."""
    A = as_matrix(A)
    report = rsp_order_k(A, K, tol, budget)
    if report.holds is not Verdict.YES:
        return True
    return K < spark(A, tol)


def unique_sparsest_consequence(A, K: int, tol: ToleranceConfig = DEFAULT_TOLERANCES,
                                seed: int = 0, budget: int = DEFAULT_CHECK_BUDGET) -> bool:
    """Check the downstream sparsity claim of a yes verdict at order K.

    When the order-K property holds, any vector planted on a support of size
    at most K must come back from the brute-force enumeration as the single
    sparsest support.  Vacuously true when the property does not hold.
    """
    A = as_matrix(A)
    report = rsp_order_k(A, K, tol, budget)
    if report.holds is not Verdict.YES:
        return True
    n = A.shape[1]
    rng = np.random.default_rng(seed)
    for k in range(1, K + 1):
        for S in combinations(range(n), k):
            planted = np.zeros(n)
            planted[list(S)] = rng.uniform(0.1, 1.0, size=k)
            found = sparsest_supports(A, A @ planted, tol=tol, budget=budget)
            if found.k_star != k or found.supports != [S]:
                return False
    return True
