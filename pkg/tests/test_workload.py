import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from hecsim.errors import DomainError, InvalidParameterError
from hecsim.model import SplitPolicy
from hecsim.workload import (
    CLOUD,
    EDGE,
    ParetoParams,
    TaskSet,
    allocate,
    edge_cloud_volumes,
    normalize_to_annual,
    pareto_cdf,
    pareto_pdf,
    pareto_quantile,
    sample_tasks,
    split_volume,
)

A2 = ParetoParams(2.0, 1.0)
A3 = ParetoParams(3.0, 1.0)


def ref(pp):
    return stats.pareto(b=pp.alpha, scale=pp.x_min)


class TestParams:
    @pytest.mark.parametrize("alpha", [1.0, 0.9, -2.0, math.inf, math.nan])
    def test_alpha_rejected(self, alpha):
        with pytest.raises(InvalidParameterError, match="alpha"):
            ParetoParams(alpha, 1.0)

    @pytest.mark.parametrize("x_min", [0.0, -1.0, math.nan])
    def test_xmin_rejected(self, x_min):
        with pytest.raises(InvalidParameterError):
            ParetoParams(2.0, x_min)

    def test_mean(self):
        assert A2.mean == 2.0
        assert A3.mean == 1.5


class TestPdf:
    @pytest.mark.parametrize("x, pp, expected", [(1.0, A2, 2.0), (2.0, A2, 0.25), (1.0, A3, 3.0)])
    def test_examples(self, x, pp, expected):
        assert pareto_pdf(x, pp) == pytest.approx(expected, rel=1e-14)

    def test_matches_scipy(self):
        pp = ParetoParams(2.7, 0.4)
        x = np.linspace(0.4, 50, 200)
        np.testing.assert_allclose(pareto_pdf(x, pp), ref(pp).pdf(x), rtol=1e-12)

    def test_pdf_is_cdf_derivative(self):
        # central differences of the CDF, independent of the pdf formula
        pp = A3
        x = np.linspace(1.1, 10, 50)
        h = 1e-6
        num = (pareto_cdf(x + h, pp) - pareto_cdf(x - h, pp)) / (2 * h)
        np.testing.assert_allclose(pareto_pdf(x, pp), num, rtol=1e-6)

    def test_below_support(self):
        with pytest.raises(DomainError):
            pareto_pdf(0.99, A2)


class TestQuantile:
    @pytest.mark.parametrize("u, pp, expected", [(0.0, A2, 1.0), (0.75, A2, 2.0), (0.875, A3, 2.0)])
    def test_examples(self, u, pp, expected):
        assert pareto_quantile(u, pp) == pytest.approx(expected, rel=1e-14)

    def test_matches_scipy(self):
        pp = ParetoParams(1.5, 2.0)
        u = np.linspace(0, 0.999, 300)
        np.testing.assert_allclose(pareto_quantile(u, pp), ref(pp).ppf(u), rtol=1e-12)

    @pytest.mark.parametrize("u", [1.0, 1.5, -0.1, math.nan])
    def test_domain(self, u):
        with pytest.raises(DomainError):
            pareto_quantile(u, A2)

    def test_strictly_increasing(self):
        u = np.linspace(0, 0.9999, 10_000)
        assert np.all(np.diff(pareto_quantile(u, A2)) > 0)

    @pytest.mark.parametrize("pp", [A2, A3, ParetoParams(1.2, 0.5), ParetoParams(7.0, 3.0)])
    def test_round_trip(self, pp):
        u = np.linspace(0, 0.999, 5000)
        np.testing.assert_allclose(pareto_cdf(pareto_quantile(u, pp), pp), u, rtol=0, atol=1e-12)


class TestSampling:
    def test_alpha2_mean(self):
        x = sample_tasks(np.random.default_rng(1), 10_000, A2)
        assert abs(x.mean() - 2.0) / 2.0 < 0.10

    def test_alpha3_mean(self):
        x = sample_tasks(np.random.default_rng(1), 10_000, A3)
        assert abs(x.mean() - 1.5) / 1.5 < 0.03

    def test_support(self):
        pp = ParetoParams(2.5, 0.3)
        assert sample_tasks(np.random.default_rng(3), 5000, pp).min() >= 0.3

    def test_ks(self):
        x = sample_tasks(np.random.default_rng(7), 100_000, A2)
        assert stats.kstest(x, ref(A2).cdf).statistic < 0.01

    def test_deterministic(self):
        a = sample_tasks(np.random.default_rng(5), 100, A2)
        b = sample_tasks(np.random.default_rng(5), 100, A2)
        assert np.array_equal(a, b)

    def test_zero_tasks(self):
        with pytest.raises(InvalidParameterError):
            sample_tasks(np.random.default_rng(0), 0, A2)


class TestNormalize:
    @pytest.mark.parametrize(
        "sizes, total, expected",
        [([1, 3], 7300, [1825, 5475]), ([5], 7300, [7300]), ([2, 2, 2], 876, [292, 292, 292])],
    )
    def test_examples(self, sizes, total, expected):
        np.testing.assert_allclose(normalize_to_annual(sizes, total), expected, rtol=1e-12)

    @pytest.mark.parametrize("sizes, total", [([], 10.0), ([1.0, 0.0], 10.0), ([1.0], 0.0), ([-1.0, 2.0], 5.0)])
    def test_rejects(self, sizes, total):
        with pytest.raises(InvalidParameterError):
            normalize_to_annual(sizes, total)

    @settings(max_examples=300, deadline=None)
    @given(
        st.lists(st.floats(min_value=1e-3, max_value=1e6), min_size=1, max_size=400),
        st.floats(min_value=1.0, max_value=1e5),
    )
    def test_sum_and_idempotence(self, sizes, total):
        once = normalize_to_annual(sizes, total)
        assert math.isclose(math.fsum(once), total, rel_tol=1e-9)
        twice = normalize_to_annual(once, total)
        np.testing.assert_allclose(twice, once, rtol=1e-12)
        # proportions survive the rescale
        np.testing.assert_allclose(once / once.max(), np.array(sizes) / max(sizes), rtol=1e-9)


class TestAllocate:
    def test_degenerate(self):
        sizes = np.ones(50)
        rng = np.random.default_rng(0)
        assert allocate(rng, sizes, SplitPolicy(1.0)).on_edge.all()
        assert not allocate(rng, sizes, SplitPolicy(0.0)).on_edge.any()

    def test_binomial_band(self):
        ts = allocate(np.random.default_rng(11), np.ones(10_000), SplitPolicy(0.8))
        assert 7800 <= ts.on_edge.sum() <= 8200

    def test_unbiased(self):
        sizes = np.arange(1, 21, dtype=float)
        rng = np.random.default_rng(2024)
        n_rep, p = 5000, 0.63
        hits = sum(allocate(rng, sizes, SplitPolicy(p)).on_edge.sum() for _ in range(n_rep))
        n = n_rep * len(sizes)
        sigma = math.sqrt(p * (1 - p) / n)
        assert abs(hits / n - p) < 5 * sigma

    def test_empty(self):
        with pytest.raises(InvalidParameterError):
            allocate(np.random.default_rng(0), [], SplitPolicy(0.5))

    def test_labels_and_determinism(self):
        sizes = np.arange(1.0, 30.0)
        a = allocate(np.random.default_rng(9), sizes, SplitPolicy(0.4))
        b = allocate(np.random.default_rng(9), sizes, SplitPolicy(0.4))
        assert np.array_equal(a.on_edge, b.on_edge) and np.array_equal(a.sizes, b.sizes)
        assert set(a.assignments) <= {EDGE, CLOUD}
        assert len(a) == len(sizes)


class TestVolumes:
    def test_examples(self):
        all_edge = TaskSet(normalize_to_annual([1.0, 2.0, 4.0], 7300.0), np.ones(3, bool))
        assert edge_cloud_volumes(all_edge) == (7300.0, 0.0)
        all_cloud = TaskSet(normalize_to_annual([3.0, 1.0], 876.0), np.zeros(2, bool))
        assert edge_cloud_volumes(all_cloud) == (0.0, 876.0)
        mixed = TaskSet(np.array([10.0, 20.0, 30.0]), np.array([True, False, True]))
        assert edge_cloud_volumes(mixed) == (40.0, 20.0)

    def test_conservation(self):
        rng = np.random.default_rng(3)
        sizes = normalize_to_annual(sample_tasks(rng, 365, A2), 7300.0)
        d_edge, d_cloud = edge_cloud_volumes(allocate(rng, sizes, SplitPolicy(0.7)))
        assert math.isclose(d_edge + d_cloud, 7300.0, rel_tol=1e-12)

    def test_length_mismatch(self):
        with pytest.raises(InvalidParameterError):
            TaskSet(np.ones(3), np.ones(2, bool))

    def test_volume_split(self):
        d_edge, d_cloud = split_volume([1.0, 3.0], SplitPolicy(0.25))
        assert (d_edge, d_cloud) == (1.0, 3.0)
