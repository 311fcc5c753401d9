"""Mean triangle area with all three vertices on the unit square's boundary.

Vertices are uniform in arc length over the perimeter.  By symmetry the
first vertex can be pinned to the bottom side at (x1, 0); the second then
lives on one of four sides (the four cases), and the third traverses the
whole perimeter.  For fixed first and second vertices, the signed area is
affine in the third vertex's position along any one side, so the innermost
path integral of |area| has a closed form: split the side at the sign
change and integrate each piece exactly.  That leaves two numeric levels
(x1 and the second vertex's side coordinate).

The normalizer is 16: the second vertex contributes measure 4 (four sides
of unit length) and the third vertex contributes the full perimeter length
4.  The first vertex's side has unit length, so dividing the x1 integral
of the per-case sums by 16 yields the mean, 5/32.
"""

from __future__ import annotations

import numpy as np

from .geometry import Point2, signed_area_xy
from .quadrature import QuadConfig, _budget_shares, adaptive_quad_batch

__all__ = [
    "expected_area_frame",
    "frame_point",
    "frame_xy",
    "frame_sum_poly",
    "side_case_value",
]

# side k, traversed in the perimeter direction: anchor + u * step, u in [0, 1]
_SIDES = {
    1: ((0.0, 0.0), (1.0, 0.0)),  # bottom, rightward
    2: ((1.0, 0.0), (0.0, 1.0)),  # right, upward
    3: ((1.0, 1.0), (-1.0, 0.0)),  # top, leftward
    4: ((0.0, 1.0), (0.0, -1.0)),  # left, downward
}


def frame_point(t: float) -> Point2:
    """Point at arc length t on the unit square's boundary, t in [0, 4).

    Starts at the origin and runs counter-clockwise: bottom, right, top,
    left.  Continuous on the closed loop (t -> 4 approaches the origin).
    """
    t = float(t)
    if not 0.0 <= t < 4.0:
        raise ValueError(f"perimeter parameter must be in [0, 4), got {t}")
    side = int(t) + 1
    (ax, ay), (dx, dy) = _SIDES[side]
    u = t - int(t)
    return Point2(ax + dx * u, ay + dy * u)


def frame_xy(t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized frame_point over an array of parameters in [0, 4)."""
    t = np.asarray(t, dtype=float)
    if t.size and (t.min() < 0.0 or t.max() >= 4.0):
        raise ValueError("perimeter parameters must be in [0, 4)")
    k = np.floor(t).astype(np.int64)
    u = t - k
    x = np.select([k == 0, k == 1, k == 2], [u, 1.0, 1.0 - u], default=0.0)
    y = np.select([k == 0, k == 1, k == 2], [0.0, u, 1.0], default=1.0 - u)
    return x, y


def _rotate(x, y, quarter_turns: int):
    """Rotate points a quarter turn at a time about the square's center."""
    for _ in range(quarter_turns % 4):
        x, y = 1.0 - y, x
    return x, y


def _abs_affine_integral(c0: np.ndarray, c1: np.ndarray) -> np.ndarray:
    """Exact integral of |c0 + c1 v| over v in [0, 1], elementwise.

    Splits at the root when it falls inside the interval; the two pieces
    have opposite signs, so their absolute values add.
    """
    total = c0 + 0.5 * c1
    t = np.zeros_like(c0)
    np.divide(-c0, c1, out=t, where=(c1 != 0.0))
    t = np.clip(t, 0.0, 1.0)
    head = (c0 + 0.5 * c1 * t) * t
    return np.abs(head) + np.abs(total - head)


def _pair_kernel(
    case: int, p3_side: int, x1: np.ndarray, u: np.ndarray, quarter_turns: int = 0
) -> np.ndarray:
    """Third-vertex path integral of |area| along one side, vectorized.

    First vertex (x1, 0), second on side ``case`` at coordinate u, third
    sweeping side ``p3_side``.  ``quarter_turns`` rotates the whole
    configuration, which must not change any area.
    """
    (ax, ay), (dx, dy) = _SIDES[case]
    p2x, p2y = ax + dx * u, ay + dy * u
    (gx, gy), (hx, hy) = _SIDES[p3_side]
    p1x, p1y = _rotate(x1, 0.0, quarter_turns)
    p2x, p2y = _rotate(p2x, p2y, quarter_turns)
    g = _rotate(gx, gy, quarter_turns)
    e = _rotate(gx + hx, gy + hy, quarter_turns)
    c0 = signed_area_xy(p1x, p1y, p2x, p2y, g[0], g[1])
    c1 = signed_area_xy(p1x, p1y, p2x, p2y, e[0], e[1]) - c0
    return _abs_affine_integral(np.asarray(c0, dtype=float), np.asarray(c1, dtype=float))


def _check_case(case: int) -> int:
    if case not in (1, 2, 3, 4):
        raise ValueError(f"side case must be 1..4, got {case}")
    return case


def _check_x1(x1: float) -> float:
    x1 = float(x1)
    if not 0.0 <= x1 <= 1.0:
        raise ValueError(f"x1 must be in [0, 1], got {x1}")
    return x1


def side_case_value(case: int, x1: float, cfg: QuadConfig = QuadConfig()) -> float:
    """Double path integral of |area| for one hosting side of the second vertex.

    Integrates over the second vertex's coordinate on side ``case`` and the
    third vertex over the full perimeter, with the first vertex at (x1, 0).
    Always nonnegative.  The four cases have the closed forms
    1/2 - x1 + x1**2, (11 - 8 x1 + 3 x1**2)/12, (11 - 6 x1 + 6 x1**2)/12,
    and (6 + 2 x1 + 3 x1**2)/12.
    """
    _check_case(case)
    x1 = _check_x1(x1)

    def f(ids: np.ndarray, u: np.ndarray):
        vals = np.zeros_like(u)
        for p3_side in (1, 2, 3, 4):
            vals += _pair_kernel(case, p3_side, x1, u)
        return vals, np.zeros_like(vals), np.ones(u.size, dtype=bool)

    value, _, _ = adaptive_quad_batch(
        f,
        np.array([0.0]),
        np.array([1.0]),
        rel_tol=cfg.rel_tol,
        max_depth=cfg.max_depth,
    )
    return float(value[0])


def frame_sum_poly(x1: float, cfg: QuadConfig = QuadConfig()) -> float:
    """Sum of the four side cases at fixed x1; equals 17/6 - 2 x1 + 2 x1**2."""
    return sum(side_case_value(case, x1, cfg) for case in (1, 2, 3, 4))


def expected_area_frame(cfg: QuadConfig = QuadConfig(), p1_side: int = 1) -> float:
    """Mean area of a triangle with vertices uniform on the boundary: 5/32.

    ``p1_side`` pins the first vertex to another side instead of the
    bottom; the answer must not depend on it (checked by rotating every
    configuration, which preserves areas exactly up to rounding).
    """
    _check_case(p1_side)
    quarter_turns = p1_side - 1
    budgets = cfg.rel_tol * _budget_shares(2)

    def outer(ids: np.ndarray, x1: np.ndarray):
        def inner(jds: np.ndarray, u: np.ndarray):
            vals = np.zeros_like(u)
            for case in (1, 2, 3, 4):
                for p3_side in (1, 2, 3, 4):
                    vals += _pair_kernel(case, p3_side, x1[jds], u, quarter_turns)
            return vals, np.zeros_like(vals), np.ones(u.size, dtype=bool)

        return adaptive_quad_batch(
            inner,
            np.zeros(x1.size),
            np.ones(x1.size),
            rel_tol=budgets[1],
            max_depth=cfg.max_depth,
        )

    value, _, _ = adaptive_quad_batch(
        outer,
        np.array([0.0]),
        np.array([1.0]),
        rel_tol=budgets[0],
        max_depth=cfg.max_depth,
    )
    # second vertex: 4 unit sides; third vertex: perimeter length 4
    return float(value[0]) / 16.0
