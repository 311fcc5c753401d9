"""Seeded sampling estimates: reproducibility, statistics, and validation."""

import math

import numpy as np
import pytest

from randtri.geometry import CubeDomain, RectDomain
from randtri.montecarlo import (
    CubeTetrahedron,
    EstimateResult,
    FrameTriangle,
    InteriorTriangle,
    estimate,
    sample_frame,
    sample_interior,
)

# frozen outputs of estimate(problem, 10_000, seed=12345, chunks=8); these
# pin the substream layout, the merge order, and the samplers all at once
GOLDEN = {
    "interior": (0.07643655937366307, 0.004634342684453477),
    "frame": (0.15829649888803077, 0.01743849505679741),
    "tetra": (0.013859640088212756, 0.00019216444730710546),
}

PROBLEMS = {
    "interior": InteriorTriangle(),
    "frame": FrameTriangle(),
    "tetra": CubeTetrahedron(),
}


class TestGolden:
    @pytest.mark.parametrize("label", sorted(GOLDEN))
    def test_frozen_estimates(self, label):
        res = estimate(PROBLEMS[label], 10_000, seed=12345, chunks=8)
        mean, variance = GOLDEN[label]
        assert res.mean == mean
        assert res.variance == variance
        assert res.n == 10_000 and res.seed == 12345 and res.chunks == 8

    def test_result_fields_are_consistent(self):
        res = estimate(PROBLEMS["interior"], 10_000, seed=12345, chunks=8)
        assert res.stderr == (res.variance / res.n) ** 0.5
        assert res.ci95_low == res.mean - 1.959964 * res.stderr
        assert res.ci95_high == res.mean + 1.959964 * res.stderr


class TestDeterminism:
    def test_repeat_runs_are_identical(self):
        a = estimate(PROBLEMS["frame"], 50_000, seed=3, chunks=16)
        b = estimate(PROBLEMS["frame"], 50_000, seed=3, chunks=16)
        assert a == b

    @pytest.mark.parametrize("threads", [1, 2, 4])
    def test_thread_count_is_invisible(self, threads):
        base = estimate(PROBLEMS["interior"], 100_000, seed=7, chunks=32, threads=1)
        other = estimate(
            PROBLEMS["interior"], 100_000, seed=7, chunks=32, threads=threads
        )
        assert base == other

    def test_seed_changes_the_estimate(self):
        a = estimate(PROBLEMS["interior"], 10_000, seed=0, chunks=8)
        b = estimate(PROBLEMS["interior"], 10_000, seed=1, chunks=8)
        assert a.mean != b.mean

    def test_chunking_changes_draws_but_not_the_law(self):
        # different chunk counts consume the substreams differently, so the
        # values differ, but both estimate the same quantity
        a = estimate(PROBLEMS["interior"], 100_000, seed=5, chunks=1)
        b = estimate(PROBLEMS["interior"], 100_000, seed=6, chunks=64)
        assert a.mean != b.mean
        gap = abs(a.mean - b.mean)
        assert gap <= 5.0 * math.hypot(a.stderr, b.stderr)


class TestStatistics:
    def test_interior_matches_quadrature_constant(self):
        res = estimate(PROBLEMS["interior"], 1_000_000, seed=7)
        assert res.ci95_low <= 11.0 / 144.0 <= res.ci95_high

    def test_frame_matches_quadrature_constant(self):
        res = estimate(PROBLEMS["frame"], 1_000_000, seed=7)
        assert res.ci95_low <= 5.0 / 32.0 <= res.ci95_high

    def test_tetrahedron_band(self):
        res = estimate(PROBLEMS["tetra"], 1_000_000, seed=7)
        assert 0.0132 <= res.mean <= 0.0146

    def test_stderr_shrinks_like_root_n(self):
        for label in ("interior", "frame", "tetra"):
            small = estimate(PROBLEMS[label], 10_000, seed=3, chunks=8)
            large = estimate(PROBLEMS[label], 1_000_000, seed=3, chunks=8)
            ratio = small.stderr / large.stderr
            assert 8.0 <= ratio <= 12.5, label

    def test_rectangle_mean_scales_with_area(self):
        unit = estimate(PROBLEMS["interior"], 1_000_000, seed=11)
        rect = estimate(
            InteriorTriangle(RectDomain(2.0, 3.0)), 1_000_000, seed=12
        )
        gap = abs(rect.mean - 6.0 * unit.mean)
        combined = math.hypot(rect.stderr * 1.0, 6.0 * unit.stderr)
        assert gap <= 5.0 * combined

    def test_variance_positive_and_bounded(self):
        res = estimate(PROBLEMS["frame"], 10_000, seed=2, chunks=4)
        assert 0.0 < res.variance < 0.25  # |area| <= 1/2 caps the variance


class TestSamplers:
    def test_interior_points_fill_the_rectangle(self):
        rng = np.random.default_rng(21)
        dom = RectDomain(2.0, 0.5)
        pts = sample_interior(rng, dom, size=100_000)
        assert pts.shape == (100_000, 2)
        assert pts[:, 0].min() >= 0.0 and pts[:, 0].max() <= 2.0
        assert pts[:, 1].min() >= 0.0 and pts[:, 1].max() <= 0.5
        # mean of a uniform coordinate is the midpoint
        se = 2.0 / math.sqrt(12.0) / math.sqrt(100_000)
        assert abs(pts[:, 0].mean() - 1.0) <= 5.0 * se

    def test_interior_single_point(self):
        rng = np.random.default_rng(22)
        p = sample_interior(rng, RectDomain(1.0, 1.0))
        assert 0.0 <= p.x <= 1.0 and 0.0 <= p.y <= 1.0

    def test_frame_points_sit_on_the_boundary(self):
        rng = np.random.default_rng(23)
        pts = sample_frame(rng, size=100_000)
        x, y = pts[:, 0], pts[:, 1]
        on_edge = (x == 0.0) | (x == 1.0) | (y == 0.0) | (y == 1.0)
        assert on_edge.all()
        # each side carries a quarter of the arc length
        bottom = (y == 0.0).mean()
        assert abs(bottom - 0.25) <= 5.0 * math.sqrt(0.25 * 0.75 / 100_000)

    def test_frame_single_point(self):
        rng = np.random.default_rng(24)
        p = sample_frame(rng)
        assert p.x in (0.0, 1.0) or p.y in (0.0, 1.0)


class TestValidation:
    def test_rejects_tiny_runs(self):
        with pytest.raises(ValueError):
            estimate(PROBLEMS["interior"], 1)

    def test_rejects_bad_chunking(self):
        with pytest.raises(ValueError):
            estimate(PROBLEMS["interior"], 100, chunks=0)
        with pytest.raises(ValueError):
            estimate(PROBLEMS["interior"], 100, chunks=101)

    def test_rejects_bad_seed(self):
        with pytest.raises(ValueError):
            estimate(PROBLEMS["interior"], 100, seed=-1, chunks=4)
        with pytest.raises(ValueError):
            estimate(PROBLEMS["interior"], 100, seed=2**64, chunks=4)

    def test_rejects_bad_threads(self):
        with pytest.raises(ValueError):
            estimate(PROBLEMS["interior"], 100, chunks=4, threads=0)

    def test_rejects_unknown_problem(self):
        with pytest.raises(TypeError):
            estimate(object(), 100, chunks=4)

    def test_domain_validation_happens_at_construction(self):
        with pytest.raises(ValueError):
            InteriorTriangle(RectDomain(-1.0, 1.0))
        with pytest.raises(ValueError):
            CubeTetrahedron(CubeDomain(0.0))


class TestResultType:
    def test_is_frozen_and_comparable(self):
        res = estimate(PROBLEMS["tetra"], 1_000, seed=1, chunks=2)
        assert isinstance(res, EstimateResult)
        with pytest.raises(Exception):
            res.mean = 0.0
