"""
Property-based tests for the numerical building blocks.
"""

from typing import List
import math

import hypothesis.strategies as st
import numpy as np
from hypothesis import given, settings

from abcmeta.abc.engine import distance, select_accepted
from abcmeta.abc.selection import posterior_from_counts
from abcmeta.core.errors import NegativeVariance
from abcmeta.core.summary import SummaryStats, summarize_sample, validate
from abcmeta.distributions.special import normal_quantile
from abcmeta.estimators.closed_form import closed_form_estimate, wan_sd


PROPERTY = settings(max_examples=1000, derandomize=True, deadline=None)

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)
five_values = st.lists(finite, min_size=5, max_size=5).map(sorted)
sample_sizes = st.integers(min_value=2, max_value=5_000)

CASES = [
    ("adhoc", "S1"),
    ("adhoc", "S3"),
    ("hozo", "S1"),
    ("bland", "S2"),
    ("wan", "S1"),
    ("wan", "S2"),
    ("wan", "S3"),
]


def _stats(values: List[float], n: int, scenario: str) -> SummaryStats:
    a, q1, m, q3, b = values
    if scenario == "S1":
        return SummaryStats(x_min=a, x_med=m, x_max=b, n=n)
    if scenario == "S3":
        return SummaryStats(x_q1=q1, x_med=m, x_q3=q3, n=n)
    return SummaryStats(x_min=a, x_q1=q1, x_med=m, x_q3=q3, x_max=b, n=n)


class TestClosedFormProperties:
    """Closed-form rules commute with positive affine maps."""

    @PROPERTY
    @given(
        values=five_values,
        n=sample_sizes,
        case=st.sampled_from(CASES),
        scale=st.floats(min_value=0.01, max_value=100),
        shift=finite,
    )
    def test_affine_equivariance(self, values, n, case, scale, shift):
        method, scenario = case
        stats = _stats(values, n, scenario)
        moved = stats.affine(scale, shift)
        try:
            before = closed_form_estimate(method, stats, scenario)
            after = closed_form_estimate(method, moved, scenario)
        except NegativeVariance:
            return

        magnitude = scale * max(abs(v) for v in values) + abs(shift) + 1.0
        assert math.isclose(after.mean, scale * before.mean + shift, abs_tol=1e-9 * magnitude)
        assert math.isclose(after.sd ** 2, (scale * before.sd) ** 2, abs_tol=1e-8 * magnitude ** 2)

    @PROPERTY
    @given(values=five_values, n=sample_sizes, case=st.sampled_from(CASES))
    def test_estimates_are_finite(self, values, n, case):
        method, scenario = case
        try:
            est = closed_form_estimate(method, _stats(values, n, scenario), scenario)
        except NegativeVariance:
            return
        assert math.isfinite(est.mean) and math.isfinite(est.sd)
        assert est.sd >= 0

    @PROPERTY
    @given(values=five_values, n=sample_sizes, extra=st.integers(min_value=1, max_value=5_000))
    def test_wan_sd_shrinks_with_n(self, values, n, extra):
        for scenario in ("S1", "S3"):
            small = wan_sd(_stats(values, n, scenario), scenario)
            large = wan_sd(_stats(values, n + extra, scenario), scenario)
            assert large <= small * (1 + 1e-12)


class TestSummaryProperties:
    """summarize_sample depends on the values, not their order."""

    @PROPERTY
    @given(
        values=st.lists(finite, min_size=2, max_size=60),
        scenario=st.sampled_from(["S1", "S2", "S3"]),
        data=st.data(),
    )
    def test_permutation_invariance(self, values, scenario, data):
        shuffled = data.draw(st.permutations(values))
        assert summarize_sample(shuffled, scenario) == summarize_sample(values, scenario)

    @PROPERTY
    @given(
        values=st.lists(finite, min_size=2, max_size=60),
        scenario=st.sampled_from(["S1", "S2", "S3"]),
        rule=st.sampled_from(["linear", "weibull"]),
    )
    def test_output_is_ordered(self, values, scenario, rule):
        stats = summarize_sample(values, scenario, quantile_rule=rule)
        validate(stats, scenario)
        assert stats.n == len(values)


class TestNormalQuantileProperties:
    """Symmetry and monotonicity of the normal quantile."""

    @PROPERTY
    @given(upper=st.floats(min_value=0.5, max_value=1.0, exclude_max=True))
    def test_antisymmetry(self, upper):
        lower = 1.0 - upper  # exact for upper in [0.5, 1)
        assert math.isclose(normal_quantile(upper), -normal_quantile(lower), rel_tol=1e-12, abs_tol=1e-12)

    @PROPERTY
    @given(
        p=st.floats(min_value=1e-300, max_value=1.0, exclude_max=True),
        q=st.floats(min_value=1e-300, max_value=1.0, exclude_max=True),
    )
    def test_monotone(self, p, q):
        lo, hi = min(p, q), max(p, q)
        assert normal_quantile(lo) <= normal_quantile(hi) + 1e-12


class TestAcceptanceProperties:
    """Acceptance depends only on the ranking of distances."""

    @PROPERTY
    @given(
        distances=st.lists(st.integers(min_value=0, max_value=10_000), min_size=1, max_size=200),
        k=st.integers(min_value=1, max_value=200),
        factor=st.integers(min_value=1, max_value=1_000),
    )
    def test_top_k_invariant_under_scaling(self, distances, k, factor):
        base = np.array(distances, dtype=float)
        scaled = np.array([d * factor for d in distances], dtype=float)
        np.testing.assert_array_equal(select_accepted(base, k), select_accepted(scaled, k))

    @PROPERTY
    @given(
        distances=st.lists(st.integers(min_value=0, max_value=100), min_size=1, max_size=200),
        k=st.integers(min_value=1, max_value=200),
    )
    def test_top_k_is_smallest(self, distances, k):
        d = np.array(distances, dtype=float)
        idx = select_accepted(d, k)
        assert idx.size == min(k, d.size)
        assert list(idx) == sorted(idx)
        rest = np.setdiff1d(np.arange(d.size), idx)
        if rest.size:
            assert d[idx].max() <= d[rest].min()

    @PROPERTY
    @given(
        counts=st.lists(st.integers(min_value=0, max_value=10_000), min_size=2, max_size=6).filter(any),
        factor=st.integers(min_value=1, max_value=1_000),
    )
    def test_posterior_normalised_and_scale_free(self, counts, factor):
        probs = posterior_from_counts(counts)
        assert math.isclose(sum(probs), 1.0, rel_tol=1e-12)
        assert all(0.0 <= p <= 1.0 for p in probs)
        scaled = posterior_from_counts([c * factor for c in counts])
        assert int(np.argmax(scaled)) == int(np.argmax(probs))
        assert all(math.isclose(a, b, rel_tol=1e-12) for a, b in zip(probs, scaled))

    @PROPERTY
    @given(
        a=st.lists(finite, min_size=3, max_size=3),
        b=st.lists(finite, min_size=3, max_size=3),
        c=st.lists(finite, min_size=3, max_size=3),
    )
    def test_distance_is_a_metric(self, a, b, c):
        assert distance(a, b) == distance(b, a)
        assert distance(a, a) == 0
        assert distance(a, c) <= distance(a, b) + distance(b, c) + 1e-9
