import math

import numpy as np
import pytest

from core.config.params import ProblemParams, new_params
from core.errors import ParameterError
from core.verification.branching import (
    EXACT_BINOMIAL_MAX,
    _log_term,
    branching_bound_check,
    branching_mc_check,
    branching_pmf_exact,
    branching_simulate,
    total_variation,
)
from core.verification.hashed_pd import hashed_level_stats, hashed_pd_mean_mc
from core.verification.leaf import leaf_mgf, leaf_mgf_check, leaf_pmf_exact, leaf_tail_check
from core.verification.mean_bounds import collect_reached_counts, mean_bounds_mc


class TestBranching:

    @pytest.mark.parametrize("q", [0.01, 1 / 16, 0.2, 0.4])
    def test_small_values(self, q):
        pmf = branching_pmf_exact(q, 9).pmf
        assert pmf[0] == 0
        assert pmf[1] == pytest.approx(1 - q)
        assert pmf[2] == 0
        assert pmf[3] == pytest.approx(q * (1 - q) ** 2)
        assert pmf[5] == pytest.approx(2 * q ** 2 * (1 - q) ** 3)

    def test_q_zero(self):
        exact = branching_pmf_exact(0.0, 11)
        assert exact.pmf[1] == 1.0
        assert exact.pmf.sum() == 1.0
        assert exact.tail_mass == 0.0

    @pytest.mark.parametrize("q", [0.5, 0.7, -0.1])
    def test_supercritical_rejected(self, q):
        with pytest.raises(ParameterError):
            branching_pmf_exact(q, 9)

    def test_mass_is_complete(self):
        exact = branching_pmf_exact(1 / 16, 199)
        assert exact.pmf.sum() + exact.tail_mass == pytest.approx(1.0)
        assert exact.tail_mass < 1e-12

    def test_log_space_is_continuous(self):
        q = 0.1
        n = EXACT_BINOMIAL_MAX + 1
        half = (n - 1) // 2
        direct = math.comb(n, half) * (1 - q) ** (half + 1) * q ** half / n
        assert math.exp(_log_term(n, q)) == pytest.approx(direct, rel=1e-9)

    def test_bound_holds_at_one_sixteenth(self):
        report = branching_bound_check(1 / 16, 99)
        assert report.passed
        assert report.observed <= 1.0
        assert report.to_dict()["pass"] is True

    def test_bound_fails_for_large_q(self):
        assert not branching_bound_check(0.3, 99).passed

    def test_simulation_q_zero(self):
        sim = branching_simulate(0.0, 64, 1000, seed=1)
        assert sim.counts[1] == 1000
        assert sim.truncated == 0

    def test_simulation_is_seeded(self):
        a = branching_simulate(1 / 16, 64, 5000, seed=3)
        b = branching_simulate(1 / 16, 64, 5000, seed=3)
        assert np.array_equal(a.counts, b.counts)
        # 总后代数恒为奇数
        assert a.counts[0::2].sum() == 0

    def test_monte_carlo_matches_exact(self):
        report = branching_mc_check(1 / 16, 200_000, seed=0)
        assert report.passed
        assert report.observed < 0.01

    @pytest.mark.slow
    def test_monte_carlo_matches_exact_full_scale(self):
        assert branching_mc_check(1 / 16, 1_000_000, seed=0).passed

    def test_total_variation(self):
        assert total_variation(np.array([0.5, 0.5]), np.array([0.5, 0.5])) == 0.0
        assert total_variation(np.array([1.0]), np.array([0.0, 1.0])) == 1.0


class TestLeaf:

    @pytest.mark.parametrize("q", [1 / 12, 0.3])
    def test_height_one(self, q):
        leaf = leaf_pmf_exact(q, 1)
        assert leaf.pmf.size == 3
        assert leaf.pmf[2] == pytest.approx(q ** 3)
        assert leaf.tail()[1] <= 2 * q ** 2
        assert leaf.pmf.sum() == pytest.approx(1.0)

    def test_height_zero(self):
        assert leaf_pmf_exact(0.25, 0).pmf.tolist() == [0.75, 0.25]

    @pytest.mark.parametrize("h", [2, 5, 10])
    def test_support_and_mass(self, h):
        pmf = leaf_pmf_exact(1 / 12, h).pmf
        assert pmf.size == 2 ** h + 1
        assert pmf.sum() == pytest.approx(1.0)
        assert np.all(pmf >= 0)

    def test_height_guard(self):
        with pytest.raises(ParameterError):
            leaf_pmf_exact(0.1, 15)

    def test_tail_bound(self):
        report = leaf_tail_check(1 / 12, 10)
        assert report.passed
        assert report.observed <= 1.0

    def test_tail_bound_fails_for_large_q(self):
        assert not leaf_tail_check(0.3, 3).passed

    def test_mgf(self):
        assert leaf_mgf(1 / 12, 4, 0.0) == pytest.approx(1.0)
        report = leaf_mgf_check(1 / 12, 10, math.log(2.0))
        assert report.passed
        assert report.observed <= 2.0
        assert len(report.details["per_height"]) == 10
        assert all(entry["pass"] for entry in report.details["per_height"])

    def test_mgf_lambda_guard(self):
        with pytest.raises(ParameterError):
            leaf_mgf_check(1 / 12, 4, 0.8)


class TestMeanBounds:

    def test_reduced_scale(self):
        params = new_params(1 << 10, 16, C=16)
        reports = mean_bounds_mc(params, 50, seed=1)
        assert [report.check for report in reports] == ["mean-leaf", "mean-total"]
        assert all(report.passed for report in reports)
        assert all(report.stderr is not None for report in reports)

    def test_leaf_pd_tail_is_rare(self):
        leaf_report = mean_bounds_mc(new_params(1 << 12, 32, C=16), 100, seed=3)[0]
        assert leaf_report.details["tail_threshold"] == 24 * 32
        assert leaf_report.details["tail_fraction"] < 0.01

    def test_larger_C_reaches_fewer_nodes(self):
        loose = collect_reached_counts(new_params(1 << 10, 16, C=4), 30, seed=2)
        tight = collect_reached_counts(new_params(1 << 10, 16, C=64), 30, seed=2)
        assert tight[:, 0].mean() < loose[:, 0].mean()
        assert tight[:, 1].mean() <= loose[:, 1].mean()

    def test_rejects_tiny_C(self):
        with pytest.raises(ParameterError):
            mean_bounds_mc(ProblemParams(n=256, k=4, C=2, Cprime=3, Ctil=1, seed=0), 5, 0)

    @pytest.mark.slow
    def test_full_scale(self):
        reports = mean_bounds_mc(new_params(1 << 14, 64, C=16), 1000, seed=0)
        assert all(report.passed for report in reports)


class TestHashedPd:

    def test_reduced_scale(self):
        params = new_params(1 << 10, 16, C=16, Ctil=1)
        report = hashed_pd_mean_mc(params, 7, 30, seed=1)
        assert report.passed
        assert report.observed <= params.k / 2
        assert len(report.details["levels"]) == params.ell_max - params.ell_min
        assert report.details["c_var"] >= 0

    def test_variance_scales_with_k(self):
        c_vars = [
            hashed_pd_mean_mc(new_params(1 << 12, k, C=16, Ctil=1), 8, 60, seed=k).details["c_var"]
            for k in (16, 32, 64)
        ]
        assert min(c_vars) > 0
        assert max(c_vars) <= 4 * min(c_vars)

    def test_preconditions(self):
        with pytest.raises(ParameterError):
            hashed_pd_mean_mc(new_params(256, 4, C=4, Ctil=1), 5, 3, seed=0)
        with pytest.raises(ParameterError):
            hashed_pd_mean_mc(new_params(256, 4, C=16, Ctil=2), 5, 3, seed=0)

    def test_repetition_lowers_survival(self):
        single = hashed_level_stats(new_params(1 << 10, 16, C=16, Ctil=1), 7, 30, seed=4)
        double = hashed_level_stats(new_params(1 << 10, 16, C=16, Ctil=2), 7, 30, seed=4)

        def pooled(levels):
            exposed = sum(entry.exposed for entry in levels)
            return sum(entry.survived for entry in levels) / exposed

        assert pooled(double) < pooled(single)

    @pytest.mark.slow
    def test_full_scale(self):
        report = hashed_pd_mean_mc(new_params(1 << 12, 32, C=16, Ctil=1), 8, 2000, seed=0)
        assert report.passed
