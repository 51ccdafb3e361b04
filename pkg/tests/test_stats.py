from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from delibsum.stats import (
    PairwiseOutcome,
    TTestResult,
    betainc_reg,
    paired_t,
    pairwise_significance,
    t_cdf,
)


def t_density(x: float, df: int) -> float:
    log_norm = (
        math.lgamma((df + 1) / 2) - math.lgamma(df / 2) - 0.5 * math.log(df * math.pi)
    )
    return math.exp(log_norm - (df + 1) / 2 * math.log(1 + x * x / df))


def t_cdf_quadrature(t: float, df: int) -> float:
    """Independent oracle: numerically integrate the t density from 0."""
    if t == 0:
        return 0.5
    area, _ = integrate.quad(t_density, 0, abs(t), args=(df,), epsabs=1e-12, limit=200)
    return 0.5 + area if t > 0 else 0.5 - area


samples = st.lists(
    st.floats(min_value=-100, max_value=100, allow_nan=False), min_size=2, max_size=20
)


class TestTCdf:
    def test_symmetry_point(self):
        for df in (1, 4, 30):
            assert t_cdf(0.0, df) == 0.5

    def test_infinite_tails(self):
        assert t_cdf(math.inf, 5) == 1.0
        assert t_cdf(-math.inf, 5) == 0.0

    def test_known_value_against_quadrature(self):
        value = t_cdf(4.2426, 4)
        oracle = t_cdf_quadrature(4.2426, 4)
        assert abs(value - oracle) < 1e-8

    def test_grid_against_quadrature(self):
        for df in (1, 2, 5, 17, 50):
            for t in (-6.5, -2.0, -0.3, 0.7, 3.1, 9.0):
                assert abs(t_cdf(t, df) - t_cdf_quadrature(t, df)) < 1e-8

    def test_monotone_and_reflective(self):
        rng = random.Random(0)
        for _ in range(200):
            df = rng.randint(1, 50)
            t = rng.uniform(-10, 10)
            assert abs(t_cdf(t, df) + t_cdf(-t, df) - 1.0) < 1e-10
            assert t_cdf(t, df) <= t_cdf(t + rng.uniform(0, 2), df) + 1e-15

    def test_df_validated(self):
        with pytest.raises(ValueError):
            t_cdf(1.0, 0)

    def test_betainc_bounds(self):
        assert betainc_reg(2.0, 0.5, 0.0) == 0.0
        assert betainc_reg(2.0, 0.5, 1.0) == 1.0
        with pytest.raises(ValueError):
            betainc_reg(-1.0, 0.5, 0.5)


class TestPairedT:
    def test_known_differences(self):
        x = [1.0, 2.0, 3.0, 4.0, 5.0]
        y = [0.0] * 5
        result = paired_t(x, y)
        assert abs(result.t_statistic - 4.2426) < 1e-4
        assert result.degrees_of_freedom == 4
        oracle_p = 2 * (1 - t_cdf_quadrature(abs(result.t_statistic), 4))
        assert abs(result.p_value - oracle_p) < 1e-3
        assert result.significant_at_05

    def test_identical_samples(self):
        x = [3.0, 1.0, 4.0]
        result = paired_t(x, x)
        assert result.t_statistic == 0.0
        assert result.p_value == 1.0
        assert not result.degenerate
        assert not result.significant_at_05

    def test_constant_nonzero_difference_is_degenerate(self):
        result = paired_t([2.0, 2.0, 2.0], [1.0, 1.0, 1.0])
        assert result.degenerate
        assert result.p_value == 0.0
        assert math.isinf(result.t_statistic)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            paired_t([1.0, 2.0], [1.0])

    def test_too_few_pairs(self):
        with pytest.raises(ValueError):
            paired_t([1.0], [2.0])

    @given(samples, samples.map(lambda v: v))
    def test_antisymmetry(self, x, y):
        n = min(len(x), len(y))
        x, y = x[:n], y[:n]
        if n < 2:
            return
        forward = paired_t(x, y)
        backward = paired_t(y, x)
        if forward.degenerate or math.isinf(forward.t_statistic):
            assert backward.degenerate == forward.degenerate
            return
        assert abs(forward.t_statistic + backward.t_statistic) < 1e-9
        assert abs(forward.p_value - backward.p_value) < 1e-9

    @given(samples, st.floats(-50, 50, allow_nan=False))
    def test_shift_invariance(self, x, shift):
        y = [v * 0.5 + 1 for v in x]
        base = paired_t(x, y)
        shifted = paired_t([v + shift for v in x], [v + shift for v in y])
        if base.degenerate or math.isinf(base.t_statistic):
            return
        assert abs(base.t_statistic - shifted.t_statistic) < 1e-6


class TestPairwise:
    def test_fifteen_pairs_for_six_models(self):
        rng = random.Random(2)
        scores = {f"m{i}": [rng.uniform(-50, 50) for _ in range(8)] for i in range(6)}
        outcomes = pairwise_significance(scores)
        assert len(outcomes) == 15
        assert all(isinstance(o, PairwiseOutcome) for o in outcomes)

    def test_identical_columns_not_significant(self):
        scores = {"a": [1.0, 2.0, 3.0], "b": [1.0, 2.0, 3.0]}
        (outcome,) = pairwise_significance(scores)
        assert outcome.result.p_value == 1.0
        assert not outcome.result.significant_at_05

    def test_consistent_offset_is_significant(self):
        # One model beats every other on every debate; with n >= 6 debates a
        # same-sign difference of this size must reach p < 0.05.
        rng = random.Random(3)
        base = [rng.uniform(-10, 10) for _ in range(10)]
        scores = {
            "strong": [v + 30 + rng.uniform(0, 2) for v in base],
            "mid": list(base),
            "weak": [v - 25 - rng.uniform(0, 2) for v in base],
        }
        outcomes = {(o.model_a, o.model_b): o for o in pairwise_significance(scores)}
        for pair, outcome in outcomes.items():
            if "strong" in pair:
                assert outcome.result.significant_at_05, pair

    def test_missing_scores_excluded_and_counted(self):
        scores = {
            "a": [1.0, None, 3.0, 4.0],
            "b": [0.5, 2.0, None, 1.0],
        }
        (outcome,) = pairwise_significance(scores)
        assert outcome.excluded_debates == 2
        assert outcome.result.degrees_of_freedom == 1

    def test_misaligned_lists_rejected(self):
        with pytest.raises(ValueError):
            pairwise_significance({"a": [1.0, 2.0], "b": [1.0]})

    def test_bonferroni_scales_p(self):
        rng = random.Random(4)
        scores = {f"m{i}": [rng.uniform(-50, 50) for _ in range(6)] for i in range(4)}
        plain = pairwise_significance(scores)
        corrected = pairwise_significance(scores, bonferroni=True)
        for p, c in zip(plain, corrected):
            assert abs(min(p.result.p_value * 6, 1.0) - c.result.p_value) < 1e-12


def test_result_serialisation():
    result = TTestResult(2.5, 9, 0.03)
    payload = result.to_dict()
    assert payload["significant_at_05"] is True
    assert payload["df"] == 9
