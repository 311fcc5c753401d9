"""Seeded Monte Carlo estimation of the three mean-size problems.

One estimator covers triangles in a rectangle (mean 11ab/144), triangles
on the unit square's boundary (mean 5/32), and tetrahedra in a cube
(mean near 1/72, no exact form asserted).  It is an independent check on
the quadrature, enumeration, and closed-form routes, so nothing here
shares code with those beyond the elementary area/volume formulas.

Reproducibility contract: the estimate is a pure function of
(problem, n, seed, chunks).  Each chunk draws from its own counter-based
substream keyed by chunk_index * 2**64 + seed, processes its samples in
fixed-size blocks with a streaming mean/M2 recurrence, and the chunk
partials merge in chunk-index order with the standard pairwise moment
combination.  Threads only decide which worker executes a chunk, never
how its numbers are produced or combined, so results are bit-identical
for any thread count.  The generator (Philox), the key mixing, the block
size, and the per-problem draw layouts are frozen by golden-value tests:
changing any of them changes published results.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Union

import numpy as np

from .frame import frame_xy
from .geometry import CubeDomain, Point2, RectDomain, signed_area_xy

__all__ = [
    "CubeTetrahedron",
    "EstimateResult",
    "FrameTriangle",
    "InteriorTriangle",
    "Problem",
    "estimate",
    "sample_frame",
    "sample_interior",
]

_BLOCK = 1 << 16
_Z95 = 1.959964  # two-sided 95% normal quantile


@dataclass(frozen=True, slots=True)
class InteriorTriangle:
    """Triangle with vertices uniform in a rectangle."""

    domain: RectDomain = RectDomain(1.0, 1.0)


@dataclass(frozen=True, slots=True)
class FrameTriangle:
    """Triangle with vertices uniform on the unit square's boundary."""


@dataclass(frozen=True, slots=True)
class CubeTetrahedron:
    """Tetrahedron with vertices uniform in a cube."""

    domain: CubeDomain = CubeDomain(1.0)


Problem = Union[InteriorTriangle, FrameTriangle, CubeTetrahedron]


@dataclass(frozen=True, slots=True)
class EstimateResult:
    """Streaming moments of one estimation run.

    variance is the unbiased sample variance; stderr = sqrt(variance/n);
    the 95% interval uses the normal approximation (n is always large).
    """

    mean: float
    variance: float
    stderr: float
    ci95_low: float
    ci95_high: float
    n: int
    seed: int
    chunks: int


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def _substream(seed: int, chunk_index: int) -> np.random.Generator:
    # frozen mixing function: disjoint Philox keys per (seed, chunk)
    return np.random.Generator(np.random.Philox(key=(chunk_index << 64) | seed))


def sample_interior(rng: np.random.Generator, domain: RectDomain, size: int | None = None):
    """Uniform point(s) in the rectangle: a Point2, or an (size, 2) array."""
    if size is None:
        return Point2(rng.uniform(0.0, domain.a), rng.uniform(0.0, domain.b))
    pts = rng.random((size, 2))
    pts[:, 0] *= domain.a
    pts[:, 1] *= domain.b
    return pts


def sample_frame(rng: np.random.Generator, size: int | None = None):
    """Uniform point(s) on the unit square's boundary, by arc length."""
    if size is None:
        x, y = frame_xy(np.array([rng.uniform(0.0, 4.0)]))
        return Point2(float(x[0]), float(y[0]))
    x, y = frame_xy(rng.random(size) * 4.0)
    return np.column_stack([x, y])


def _draw_values(problem: Problem, rng: np.random.Generator, count: int) -> np.ndarray:
    """One block of i.i.d. |area| or |volume| samples; layout is frozen."""
    if isinstance(problem, InteriorTriangle):
        q = rng.random((count, 6))
        a, b = problem.domain.a, problem.domain.b
        return np.abs(
            signed_area_xy(
                a * q[:, 0], b * q[:, 1], a * q[:, 2], b * q[:, 3], a * q[:, 4], b * q[:, 5]
            )
        )
    if isinstance(problem, FrameTriangle):
        t = rng.random((count, 3)) * 4.0
        x1, y1 = frame_xy(t[:, 0])
        x2, y2 = frame_xy(t[:, 1])
        x3, y3 = frame_xy(t[:, 2])
        return np.abs(signed_area_xy(x1, y1, x2, y2, x3, y3))
    if isinstance(problem, CubeTetrahedron):
        q = rng.random((count, 12)) * problem.domain.side
        dx, dy, dz = (q[:, 3:6] - q[:, 0:3]).T
        ex, ey, ez = (q[:, 6:9] - q[:, 0:3]).T
        fx, fy, fz = (q[:, 9:12] - q[:, 0:3]).T
        det = (
            dx * (ey * fz - ez * fy)
            - dy * (ex * fz - ez * fx)
            + dz * (ex * fy - ey * fx)
        )
        return np.abs(det) / 6.0
    raise TypeError(f"unknown problem kind: {problem!r}")


def _merge(n_a: int, mean_a: float, m2_a: float, n_b: int, mean_b: float, m2_b: float):
    """Combine two (count, mean, sum of squared deviations) partials."""
    n = n_a + n_b
    delta = mean_b - mean_a
    mean = mean_a + delta * (n_b / n)
    m2 = m2_a + m2_b + delta * delta * (n_a * (n_b / n))
    return n, mean, m2


def _chunk_moments(problem: Problem, count: int, seed: int, index: int):
    rng = _substream(seed, index)
    done, mean, m2 = 0, 0.0, 0.0
    while done < count:
        take = min(_BLOCK, count - done)
        values = _draw_values(problem, rng, take)
        block_mean = float(values.mean())
        block_m2 = float(((values - block_mean) ** 2).sum())
        done, mean, m2 = _merge(done, mean, m2, take, block_mean, block_m2)
    return count, mean, m2


def estimate(
    problem: Problem,
    n: int,
    seed: int = 0,
    chunks: int = 64,
    *,
    threads: int | None = None,
) -> EstimateResult:
    """Estimate the problem's mean over n i.i.d. samples.

    Work is split into ``chunks`` independent substreams; the first
    n mod chunks of them take one extra sample.  ``threads`` caps the
    worker pool (default: one per CPU, at most one per chunk) and has no
    effect on any returned field.
    """
    n = int(n)
    chunks = int(chunks)
    seed = _check_seed(seed)
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if not 1 <= chunks <= n:
        raise ValueError(f"need 1 <= chunks <= n, got chunks={chunks}, n={n}")
    if threads is not None and threads < 1:
        raise ValueError(f"need threads >= 1, got {threads}")
    _draw_values(problem, _substream(seed, 0), 1)  # reject unknown kinds early

    base, extra = divmod(n, chunks)
    sizes = [base + (1 if i < extra else 0) for i in range(chunks)]
    workers = threads if threads is not None else min(chunks, os.cpu_count() or 1)

    if workers == 1:
        parts = [_chunk_moments(problem, sizes[i], seed, i) for i in range(chunks)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(
                    lambda i: _chunk_moments(problem, sizes[i], seed, i),
                    range(chunks),
                )
            )

    total, mean, m2 = 0, 0.0, 0.0
    for part in parts:  # chunk-index order, fixed regardless of scheduling
        total, mean, m2 = _merge(total, mean, m2, *part)

    variance = m2 / (total - 1)
    stderr = (variance / total) ** 0.5
    return EstimateResult(
        mean=mean,
        variance=variance,
        stderr=stderr,
        ci95_low=mean - _Z95 * stderr,
        ci95_high=mean + _Z95 * stderr,
        n=total,
        seed=seed,
        chunks=chunks,
    )
