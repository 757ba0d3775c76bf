"""
Tests for the closed-form estimators.
"""

import math

import pytest
from scipy import special


def _stats(**kwargs):
    from abcmeta.core.summary import SummaryStats
    return SummaryStats(**kwargs)


class TestAdhoc:
    """Tests for the ad-hoc rules."""

    def test_range_rule(self):
        from abcmeta.estimators.closed_form import adhoc_estimate

        est = adhoc_estimate(_stats(x_min=0, x_med=5, x_max=10, n=30), "S1")
        assert (est.mean, est.sd) == (5, 2.5)

    def test_iqr_rule(self):
        from abcmeta.estimators.closed_form import adhoc_estimate

        est = adhoc_estimate(_stats(x_q1=2.5, x_med=5, x_q3=7.5, n=30), "S3")
        assert est.mean == 5
        assert est.sd == pytest.approx(3.7037, abs=1e-4)

    def test_s2_unsupported(self, s2_stats):
        from abcmeta.core.errors import UnsupportedScenario
        from abcmeta.estimators.closed_form import closed_form_estimate

        with pytest.raises(UnsupportedScenario):
            closed_form_estimate("adhoc", s2_stats, "S2")


class TestHozo:
    """Tests for Hozo's piecewise rules."""

    def test_small_n(self):
        from abcmeta.estimators.closed_form import hozo_estimate

        est = hozo_estimate(_stats(x_min=0, x_med=5, x_max=10, n=10))
        assert est.mean == 5
        assert est.sd ** 2 == pytest.approx(100 / 12)
        assert est.sd == pytest.approx(2.8868, abs=1e-4)

    def test_middle_n(self):
        from abcmeta.estimators.closed_form import hozo_estimate

        est = hozo_estimate(_stats(x_min=0, x_med=5, x_max=10, n=30))
        assert (est.mean, est.sd) == (5, 2.5)

    def test_large_n(self):
        from abcmeta.estimators.closed_form import hozo_estimate

        est = hozo_estimate(_stats(x_min=0, x_med=5, x_max=10, n=100))
        assert est.sd == pytest.approx(10 / 6)

    @pytest.mark.parametrize("n,expected_sd", [
        (15, math.sqrt((25 / 4 + 100) / 12)),
        (16, 2.5),
        (70, 2.5),
        (71, 10 / 6),
    ])
    def test_variance_boundaries(self, n, expected_sd):
        from abcmeta.estimators.closed_form import hozo_estimate

        # skewed so the small-n term is non-zero
        est = hozo_estimate(_stats(x_min=0, x_med=2.5, x_max=10, n=n))
        assert est.sd == pytest.approx(expected_sd)

    def test_mean_boundary(self):
        from abcmeta.estimators.closed_form import hozo_estimate

        at_25 = hozo_estimate(_stats(x_min=0, x_med=2, x_max=10, n=25))
        at_26 = hozo_estimate(_stats(x_min=0, x_med=2, x_max=10, n=26))
        assert at_25.mean == pytest.approx(3.5)
        assert at_26.mean == 2

    def test_only_s1(self, s3_stats):
        from abcmeta.core.errors import UnsupportedScenario
        from abcmeta.estimators.closed_form import closed_form_estimate

        with pytest.raises(UnsupportedScenario):
            closed_form_estimate("hozo", s3_stats, "S3")


class TestBland:
    """Tests for Bland's S2 estimator."""

    def test_worked_example(self):
        from abcmeta.estimators.closed_form import bland_estimate

        est = bland_estimate(_stats(x_min=0, x_q1=2.5, x_med=5, x_q3=7.5, x_max=10, n=40))
        assert est.mean == 5
        assert est.sd ** 2 == pytest.approx(7.8125)
        assert est.sd == pytest.approx(2.7951, abs=1e-4)

    def test_symmetric_mean_is_median(self):
        from abcmeta.estimators.closed_form import bland_estimate

        est = bland_estimate(_stats(x_min=1, x_q1=4, x_med=6, x_q3=8, x_max=11, n=20))
        assert est.mean == pytest.approx(6)

    def test_constant(self):
        from abcmeta.estimators.closed_form import bland_estimate

        est = bland_estimate(_stats(x_min=0, x_q1=0, x_med=0, x_q3=0, x_max=0, n=20))
        assert (est.mean, est.sd) == (0, 0)

    def test_exact_form_agrees_for_large_n(self):
        from abcmeta.estimators.closed_form import bland_estimate

        stats = _stats(x_min=0, x_q1=2.5, x_med=5, x_q3=7.5, x_max=10, n=1_000_000)
        approx = bland_estimate(stats)
        exact = bland_estimate(stats, exact=True)
        assert exact.mean == pytest.approx(approx.mean, rel=1e-5)
        assert exact.sd == pytest.approx(approx.sd, rel=1e-3)

    def test_exact_switch_through_dispatch(self, s2_stats):
        from abcmeta.estimators.closed_form import bland_estimate, closed_form_estimate

        assert closed_form_estimate("bland", s2_stats, "S2", exact_bland=True) == \
            bland_estimate(s2_stats, exact=True)

    def test_negative_variance_reported(self, monkeypatch):
        from abcmeta.core.errors import NegativeVariance
        from abcmeta.estimators import closed_form

        monkeypatch.setattr(closed_form, "_bland_mean", lambda stats, exact=False: 100.0)
        with pytest.raises(NegativeVariance) as exc:
            closed_form.bland_estimate(_stats(x_min=0, x_q1=1, x_med=2, x_q3=3, x_max=4, n=20))
        assert exc.value.variance < 0
        assert exc.value.code == "NegativeVariance"

    def test_missing_quartile(self, s1_stats):
        from abcmeta.core.errors import MissingField
        from abcmeta.estimators.closed_form import bland_estimate

        with pytest.raises(MissingField):
            bland_estimate(s1_stats)


class TestWan:
    """Tests for Wan's estimators."""

    def test_mean_rules(self):
        from abcmeta.estimators.closed_form import wan_mean

        assert wan_mean(_stats(x_q1=2.5, x_med=5, x_q3=7.5, n=30), "S3") == 5
        assert wan_mean(_stats(x_q1=1, x_med=2, x_q3=6, n=30), "S3") == 3
        assert wan_mean(_stats(x_min=0, x_med=5, x_max=10, n=30), "S1") == 5

    def test_range_sd(self):
        from abcmeta.estimators.closed_form import wan_sd

        sd = wan_sd(_stats(x_min=0, x_med=5, x_max=10, n=100), "S1")
        assert sd == pytest.approx(10 / (2 * special.ndtri(99.625 / 100.25)), rel=1e-12)
        assert sd == pytest.approx(2.00, abs=0.005)

    def test_iqr_sd(self):
        from abcmeta.estimators.closed_form import wan_sd

        sd = wan_sd(_stats(x_q1=2.5, x_med=5, x_q3=7.5, n=100), "S3")
        assert sd == pytest.approx(3.76, abs=0.005)

    def test_s2_is_average(self):
        from abcmeta.estimators.closed_form import wan_sd

        s1 = wan_sd(_stats(x_min=0, x_med=5, x_max=10, n=100), "S1")
        s3 = wan_sd(_stats(x_q1=2.5, x_med=5, x_q3=7.5, n=100), "S3")
        s2 = wan_sd(_stats(x_min=0, x_q1=2.5, x_med=5, x_q3=7.5, x_max=10, n=100), "S2")
        assert s2 == pytest.approx((s1 + s3) / 2)
        assert s2 == pytest.approx(2.88, abs=0.01)

    def test_iqr_limit(self):
        from abcmeta.estimators.closed_form import wan_sd

        sd = wan_sd(_stats(x_q1=-0.67449, x_med=0, x_q3=0.67449, n=10_000_000), "S3")
        assert sd == pytest.approx(1.0, abs=1e-4)

    def test_smallest_n(self):
        from abcmeta.estimators.closed_form import wan_sd

        # n = 2 keeps both quantile arguments above one half
        assert wan_sd(_stats(x_min=0, x_med=1, x_max=2, n=2), "S1") > 0
        assert wan_sd(_stats(x_q1=0, x_med=1, x_q3=2, n=2), "S3") > 0


class TestDispatch:
    """Tests for closed_form_estimate() and method helpers."""

    def test_methods_for_scenario(self):
        from abcmeta.estimators.closed_form import Method, methods_for_scenario

        assert methods_for_scenario("S1") == [Method.ADHOC, Method.HOZO, Method.WAN, Method.ABC]
        assert methods_for_scenario("S2") == [Method.BLAND, Method.WAN, Method.ABC]
        assert methods_for_scenario("S3") == [Method.ADHOC, Method.WAN, Method.ABC]

    def test_abc_is_not_closed_form(self, s1_stats):
        from abcmeta.estimators.closed_form import closed_form_estimate

        with pytest.raises(ValueError):
            closed_form_estimate("abc", s1_stats, "S1")

    def test_unknown_method(self):
        from abcmeta.estimators.closed_form import normalize_method

        with pytest.raises(ValueError, match="Unknown method"):
            normalize_method("median")

    def test_estimate_carries_labels(self, s3_stats):
        from abcmeta.core.scenario import Scenario
        from abcmeta.estimators.closed_form import Method, closed_form_estimate

        est = closed_form_estimate("WAN", s3_stats, "s3")
        assert est.method is Method.WAN
        assert est.scenario is Scenario.S3
        assert est.to_dict()["method"] == "wan"


class TestInputValidation:
    """Every estimator checks its summary before using it."""

    @pytest.mark.parametrize("n", [0, 1])
    @pytest.mark.parametrize("method,scenario", [
        ("adhoc", "S1"),
        ("hozo", "S1"),
        ("wan", "S1"),
        ("adhoc", "S3"),
        ("wan", "S3"),
        ("bland", "S2"),
        ("wan", "S2"),
    ])
    def test_sample_size_too_small(self, method, scenario, n):
        from abcmeta.core.errors import SampleSizeTooSmall
        from abcmeta.estimators.closed_form import closed_form_estimate

        stats = _stats(x_min=0, x_q1=2.5, x_med=5, x_q3=7.5, x_max=10, n=n)
        with pytest.raises(SampleSizeTooSmall):
            closed_form_estimate(method, stats, scenario)

    def test_direct_calls_check_n(self):
        from abcmeta.core.errors import SampleSizeTooSmall
        from abcmeta.estimators.closed_form import (
            adhoc_estimate,
            bland_estimate,
            hozo_estimate,
            wan_mean,
            wan_sd,
        )

        s1 = _stats(x_min=0, x_med=5, x_max=10, n=1)
        s2 = _stats(x_min=0, x_q1=2.5, x_med=5, x_q3=7.5, x_max=10, n=1)
        for call in (
            lambda: adhoc_estimate(s1, "S1"),
            lambda: hozo_estimate(s1),
            lambda: bland_estimate(s2),
            lambda: wan_mean(s1, "S1"),
            lambda: wan_sd(s1, "S1"),
        ):
            with pytest.raises(SampleSizeTooSmall):
                call()

    @pytest.mark.parametrize("method", ["adhoc", "hozo", "wan"])
    def test_extra_quartile_out_of_order(self, method):
        from abcmeta.core.errors import OrderingViolation
        from abcmeta.estimators.closed_form import closed_form_estimate

        # q1 is not an S1 field but is still checked against the median
        stats = _stats(x_min=0, x_q1=9, x_med=5, x_max=10, n=30)
        with pytest.raises(OrderingViolation) as exc:
            closed_form_estimate(method, stats, "S1")
        assert exc.value.code == "OrderingViolation"

    def test_unordered_range(self):
        from abcmeta.core.errors import OrderingViolation
        from abcmeta.estimators.closed_form import hozo_estimate

        with pytest.raises(OrderingViolation):
            hozo_estimate(_stats(x_min=10, x_med=5, x_max=0, n=30))
