import numpy as np
import pytest

from rspcert import (FailureReason, Infeasible, NonpositiveWeight, NotASolution,
                     NotNonnegative, ToleranceConfig, Unbounded, Verdict,
                     augmented_rank, certify_uniqueness,
                     certify_weighted_uniqueness, check_rsp_at,
                     check_weighted_rsp_at, lp_sparsest_pipeline, rank,
                     solve_and_certify, solve_l1, support_of,
                     verify_rsp_witness)

from conftest import (DENSE_A, DENSE_B, DENSE_X, TIED_A, TIED_B, TIED_X_FULL,
                      TIED_X_SPARSE, TRIPLE_A, TRIPLE_B, TRIPLE_WITNESS_ETA,
                      TRIPLE_WITNESS_Y, TRIPLE_X3, UNIQUE_A, UNIQUE_B,
                      UNIQUE_WITNESS_ETA, UNIQUE_WITNESS_Y, UNIQUE_X,
                      planted_system)


# ---------------------------------------------------------------- support_of

def test_support_of_basic():
    assert support_of(UNIQUE_X) == (0, 1)


def test_support_of_zero_vector():
    assert support_of(np.zeros(5)) == ()


def test_support_of_drops_subthreshold_entries():
    assert support_of(np.array([1e-12, 1.0, 0.0])) == (1,)


def test_support_of_rejects_negative_entries():
    with pytest.raises(NotNonnegative):
        support_of(np.array([1.0, -1e-6]))


# -------------------------------------------------------------- check_rsp_at

def test_certifying_support_yields_valid_witness():
    cert = check_rsp_at(UNIQUE_A, (0, 1))
    assert cert.holds is Verdict.YES
    assert cert.t_star <= 1.0 - 1e-7
    assert verify_rsp_witness(UNIQUE_A, (0, 1), cert.witness_eta, cert.witness_y)


def test_analytic_witness_passes_the_witness_check():
    # Hand-computed witness for the certifying support of the unique system.
    assert verify_rsp_witness(UNIQUE_A, (0, 1), UNIQUE_WITNESS_ETA, UNIQUE_WITNESS_Y)


def test_failing_support_of_multi_sparsest_system():
    cert = check_rsp_at(TRIPLE_A, (1, 4))
    assert cert.holds is Verdict.NO
    assert cert.t_star == pytest.approx(2.2, abs=1e-9)
    assert cert.witness_eta is None


def test_passing_support_reproduces_analytic_margin():
    cert = check_rsp_at(TRIPLE_A, (0, 4))
    assert cert.holds is Verdict.YES
    assert cert.t_star == pytest.approx(1.0 / 3.0, abs=1e-9)
    # The witness is pinned by the constraints up to row symmetry.
    assert cert.witness_eta == pytest.approx(TRIPLE_WITNESS_ETA, abs=1e-9)
    assert verify_rsp_witness(TRIPLE_A, (0, 4), TRIPLE_WITNESS_ETA, TRIPLE_WITNESS_Y)


def test_empty_support_holds_vacuously():
    cert = check_rsp_at(UNIQUE_A, ())
    assert cert.holds is Verdict.YES
    assert cert.t_star == -1.0
    assert np.array_equal(cert.witness_eta, np.zeros(4))
    assert np.array_equal(cert.witness_y, np.zeros(3))


def test_exact_unit_margin_is_a_hard_no():
    # The sparse tied candidate pins its margin at exactly one; the strict
    # inequality cannot be met, so the verdict must not soften to marginal.
    cert = check_rsp_at(TIED_A, (0, 1))
    assert cert.holds is Verdict.NO
    assert cert.t_star == pytest.approx(1.0, abs=1e-9)


def test_marginal_band_between_yes_and_no():
    tol = ToleranceConfig(rsp_margin=1e-2)
    # Margin LP optimum lands at t* = 1 - 5e-3, inside (1 - 1e-2, 1 - 1e-8).
    A = np.array([[1.0, 1.0 - 5e-3]])
    cert = check_rsp_at(A, (0,), tol)
    assert cert.t_star == pytest.approx(1.0 - 5e-3, abs=1e-9)
    assert cert.holds is Verdict.MARGINAL


def test_verdict_depends_only_on_the_support():
    rng = np.random.default_rng(21)
    A = rng.standard_normal((3, 7))
    base = check_rsp_at(A, (1, 5))
    again = check_rsp_at(A, (1, 5))
    assert base.holds is again.holds
    assert base.t_star == again.t_star


def test_certification_ignores_positive_magnitudes():
    # Two solutions sharing a support get identical support certificates.
    small = certify_uniqueness(UNIQUE_A, UNIQUE_A @ UNIQUE_X, UNIQUE_X)
    scaled = 100.0 * UNIQUE_X
    large = certify_uniqueness(UNIQUE_A, UNIQUE_A @ scaled, scaled)
    assert small.unique is large.unique
    assert small.rsp.t_star == large.rsp.t_star


# -------------------------------------------------------- certify_uniqueness

def test_unique_system_certifies_yes():
    verdict = certify_uniqueness(UNIQUE_A, UNIQUE_B, UNIQUE_X)
    assert verdict.unique is Verdict.YES
    assert verdict.reason is FailureReason.NONE
    assert verdict.full_column_rank and verdict.augmented_full_column_rank


def test_tied_full_support_candidate_fails_on_rank():
    verdict = certify_uniqueness(TIED_A, TIED_B, TIED_X_FULL)
    assert verdict.unique is Verdict.NO
    assert verdict.reason is FailureReason.RANK_DEFICIENT
    assert verdict.rsp.holds is Verdict.YES
    assert verdict.rank_found == 3


def test_tied_sparse_candidate_fails_on_rsp():
    verdict = certify_uniqueness(TIED_A, TIED_B, TIED_X_SPARSE)
    assert verdict.unique is Verdict.NO
    assert verdict.reason is FailureReason.RSP_FAILED
    assert verdict.full_column_rank


def test_dense_optimum_certifies_yes():
    verdict = certify_uniqueness(DENSE_A, DENSE_B, DENSE_X)
    assert verdict.unique is Verdict.YES


def test_candidate_must_solve_the_system():
    with pytest.raises(NotASolution):
        certify_uniqueness(UNIQUE_A, UNIQUE_B, np.array([1.0, 0.0, 0.0, 0.0]))
    with pytest.raises(NotNonnegative):
        certify_uniqueness(UNIQUE_A, UNIQUE_A @ np.array([1.0, -1.0, 0.0, 0.0]),
                           np.array([1.0, -1.0, 0.0, 0.0]))


def test_zero_rhs_certifies_the_zero_solution():
    verdict = certify_uniqueness(UNIQUE_A, np.zeros(3), np.zeros(4))
    assert verdict.unique is Verdict.YES
    assert verdict.rsp.support == ()


# ------------------------------------------------------------------ solve_l1

def test_l1_solution_of_multi_sparsest_system():
    x = solve_l1(TRIPLE_A, TRIPLE_B)
    assert x == pytest.approx(TRIPLE_X3, abs=1e-8)
    assert x.sum() == pytest.approx(1.0 / 3.0, abs=1e-9)


def test_l1_solution_zero_rhs():
    x = solve_l1(UNIQUE_A, np.zeros(3))
    assert np.array_equal(x, np.zeros(4))


def test_l1_objective_of_tied_system():
    x = solve_l1(TIED_A, TIED_B)
    assert x.sum() == pytest.approx(10.5, abs=1e-9)


def test_l1_infeasible_system_raises():
    with pytest.raises(Infeasible):
        solve_l1(np.array([[1.0, 2.0]]), np.array([-1.0]))


def test_solve_and_certify_across_fixtures():
    x, verdict = solve_and_certify(UNIQUE_A, UNIQUE_B)
    assert x == pytest.approx(UNIQUE_X, abs=1e-9) and verdict.unique is Verdict.YES
    _, verdict = solve_and_certify(TIED_A, TIED_B)
    assert verdict.unique is Verdict.NO
    x, verdict = solve_and_certify(TRIPLE_A, TRIPLE_B)
    assert x == pytest.approx(TRIPLE_X3, abs=1e-8) and verdict.unique is Verdict.YES


# ---------------------------------------------------------- weighted variant

def test_unit_weights_reduce_to_plain_check():
    plain = check_rsp_at(UNIQUE_A, (0, 1))
    weighted = check_weighted_rsp_at(UNIQUE_A, (0, 1), np.ones(4))
    assert weighted.holds is plain.holds
    assert weighted.t_star == pytest.approx(plain.t_star, abs=1e-12)


def test_weighted_check_equals_check_on_scaled_matrix():
    w = np.array([2.0, 2.0, 1.0, 1.0])
    weighted = check_weighted_rsp_at(UNIQUE_A, (0, 1), w)
    scaled = check_rsp_at(UNIQUE_A / w, (0, 1))
    assert weighted.holds is scaled.holds
    assert weighted.t_star == pytest.approx(scaled.t_star, abs=1e-12)


def test_tied_system_passes_weighted_check_but_not_uniqueness():
    cert = check_weighted_rsp_at(TIED_A, (0, 1, 2, 3), np.ones(4))
    assert cert.holds is Verdict.YES
    verdict = certify_weighted_uniqueness(TIED_A, TIED_B, np.ones(4), TIED_X_FULL)
    assert verdict.unique is Verdict.NO
    assert verdict.reason is FailureReason.RANK_DEFICIENT


def test_uniform_weight_scaling_preserves_the_verdict():
    base = certify_weighted_uniqueness(UNIQUE_A, UNIQUE_B, np.ones(4), UNIQUE_X)
    tripled = certify_weighted_uniqueness(UNIQUE_A, UNIQUE_B, 3.0 * np.ones(4), UNIQUE_X)
    assert base.unique is tripled.unique is Verdict.YES


def test_weights_must_be_positive():
    with pytest.raises(NonpositiveWeight):
        check_weighted_rsp_at(UNIQUE_A, (0, 1), np.array([1.0, 0.0, 1.0, 1.0]))


def test_weighted_verdict_matches_rescaled_problem():
    rng = np.random.default_rng(22)
    matches = 0
    for _ in range(20):
        A, b, x = planted_system(rng, 3, 7, int(rng.integers(1, 3)))
        w = rng.uniform(0.5, 3.0, size=7)
        left = certify_weighted_uniqueness(A, b, w, x)
        right = certify_uniqueness(A / w, b, w * x)
        assert left.unique is right.unique
        matches += 1
    assert matches == 20


# ------------------------------------------------------- lp sparsest optimum

def test_lp_sparsest_zero_objective_reduces_to_l1_pipeline():
    result = lp_sparsest_pipeline(UNIQUE_A, UNIQUE_B, np.zeros(4))
    x, verdict = solve_and_certify(UNIQUE_A, UNIQUE_B)
    assert result.d_star == 0.0
    assert result.x == pytest.approx(x, abs=1e-9)
    assert result.verdict.unique is verdict.unique


def test_lp_sparsest_with_l1_objective():
    result = lp_sparsest_pipeline(UNIQUE_A, UNIQUE_B, np.ones(4))
    assert result.d_star == pytest.approx(1.0, abs=1e-9)
    assert result.verdict.unique is Verdict.YES
    assert result.augmented_matrix.shape == (4, 4)


def test_lp_sparsest_on_the_unit_segment():
    # min x2 over the segment x1 + x2 = 1: brute force over the segment says
    # the optimal face is the single point (1, 0), which is also sparsest.
    grid = np.linspace(0.0, 1.0, 1001)
    objective = grid  # value of x2 = s at (1-s, s)... objective c=(0,1) -> s
    assert grid[np.argmin(objective)] == 0.0
    result = lp_sparsest_pipeline(np.array([[1.0, 1.0]]), [1.0], [0.0, 1.0])
    assert result.d_star == pytest.approx(0.0, abs=1e-12)
    assert result.x == pytest.approx([1.0, 0.0], abs=1e-9)
    assert result.verdict.unique is Verdict.YES


def test_lp_sparsest_rejects_unbounded_and_infeasible():
    with pytest.raises(Unbounded):
        lp_sparsest_pipeline(np.array([[1.0, -1.0]]), [0.0], [-1.0, 0.0])
    with pytest.raises(Infeasible):
        lp_sparsest_pipeline(np.array([[1.0, 1.0]]), [-1.0], [0.0, 1.0])


# ------------------------------------------------------ statistical behavior

def test_m_sparsity_of_certified_solutions():
    rng = np.random.default_rng(23)
    found = 0
    attempts = 0
    while found < 100 and attempts < 400:
        attempts += 1
        A, b, _ = planted_system(rng, 4, 8, int(rng.integers(1, 4)))
        x, verdict = solve_and_certify(A, b)
        if verdict.unique is Verdict.YES:
            found += 1
            assert len(support_of(x)) <= 4
    assert found == 100


def _perturbation_screen(rng, A, b, x, trials=20):
    """True iff every perturbed objective re-solve lands on the same point."""
    from rspcert import OPTIMAL, StandardLp, solve

    n = A.shape[1]
    for _ in range(trials):
        c = np.ones(n) + rng.uniform(-1e-6, 1e-6, size=n)
        sol = solve(StandardLp(c, A, b))
        if sol.status != OPTIMAL or np.abs(sol.x - x).max() > 1e-6:
            return False
    return True


def test_perturbation_unique_optima_always_certify():
    # Necessity: a optimum stable under 20 tiny objective perturbations is
    # unique for practical purposes and the certificate must say yes.
    rng = np.random.default_rng(24)
    accepted = 0
    attempts = 0
    while accepted < 100 and attempts < 400:
        attempts += 1
        A, b, _ = planted_system(rng, 4, 8, int(rng.integers(1, 4)))
        x = solve_l1(A, b)
        if not _perturbation_screen(rng, A, b, x):
            continue
        accepted += 1
        verdict = certify_uniqueness(A, b, x)
        assert verdict.unique is Verdict.YES
    assert accepted == 100


def test_certified_optima_survive_perturbation_search():
    # Sufficiency: when the certificate says yes, no perturbed objective can
    # reveal a different optimum.
    rng = np.random.default_rng(25)
    checked = 0
    attempts = 0
    while checked < 40 and attempts < 200:
        attempts += 1
        A, b, _ = planted_system(rng, 4, 8, int(rng.integers(1, 4)))
        x, verdict = solve_and_certify(A, b)
        if verdict.unique is not Verdict.YES:
            continue
        checked += 1
        assert _perturbation_screen(rng, A, b, x)
    assert checked == 40


def test_rank_tests_agree_whenever_rsp_holds():
    rng = np.random.default_rng(26)
    cases = [(UNIQUE_A, (0, 1)), (TIED_A, (0, 1, 2, 3)), (TRIPLE_A, (0, 4))]
    for _ in range(30):
        A = rng.standard_normal((3, 7))
        S = tuple(sorted(rng.choice(7, size=int(rng.integers(1, 4)), replace=False)))
        cases.append((A, S))
    for A, S in cases:
        cert = check_rsp_at(A, S)
        if cert.holds is Verdict.YES:
            assert (rank(A, S) == len(S)) == (augmented_rank(A, S) == len(S))
