"""Sign-constant integration regions for the mean triangle area.

Sort the three vertices so that x1 < x2 < x3.  The sign of the signed area
is then decided entirely by whether p3 lies above or below the chord
through p1 and p2, and the configuration space splits into finitely many
cells on which that sign is constant:

* the chord either ascends (y2 > y1) or descends (y2 < y1);
* an ascending chord leaves the rectangle through the top or the right
  side, depending on whether p2 sits above or below the line from p1 to
  the top-right corner (a descending chord: bottom or right side, by the
  line from p1 to the bottom-right corner);
* past the exit point the whole p3 column lies on one side of the chord;
  before it, the chord splits the column in two.

Five cells cover the ascending half.  Mirroring the rectangle top to
bottom swaps the halves, so the five-cell catalog already determines the
mean; the square builder also constructs the five descending cells
explicitly so the mirror identities can be checked rather than assumed.
The mean area is the signed sum of the area integrals over the cells
divided by the unit-integrand sum (the measure of the ordered half, one
sixth of the full configuration volume).

Bounds are callables of the already-bound outer variables, vectorized
over numpy arrays.  The innermost (y3) bounds are affine in x3 and carry
their coefficient functions explicitly, which lets the quadrature engine
fold the last two integrals into a closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Mapping, Union

import numpy as np

__all__ = [
    "AffineBound",
    "BoundFn",
    "Integrand",
    "RegionSpec",
    "UnknownNameError",
    "VAR_ORDER",
    "exact_reference",
    "normalizer_regions",
    "rectangle_regions",
    "sample_in_region",
    "square_normalizer_regions",
    "square_regions",
]

Env = Mapping[str, np.ndarray]
BoundFn = Callable[[Env], Union[np.ndarray, float]]

VAR_ORDER = ("x1", "y1", "x2", "y2", "x3", "y3")


class Integrand(Enum):
    SIGNED_AREA = "signed_area"
    ONE = "one"


@dataclass(frozen=True, slots=True)
class AffineBound:
    """A bound of the form const(outer) + slope(outer) * x3.

    The coefficient functions may depend on x1, y1, x2, y2 only.  Calling
    the bound like a plain BoundFn reads x3 from the environment; ``at``
    evaluates it for explicitly supplied x3 values.
    """

    const: BoundFn
    slope: BoundFn

    def at(self, env: Env, x3):
        return self.const(env) + self.slope(env) * x3

    def __call__(self, env: Env):
        return self.at(env, env["x3"])


@dataclass(frozen=True, slots=True)
class RegionSpec:
    """One integration cell: six chained variable bounds, a sign, an integrand.

    ``vars`` holds (name, lower, upper) triples in nesting order, outermost
    first; names are fixed to x1, y1, x2, y2, x3, y3.  On a well-formed
    cell, sign * signed_area >= 0 almost everywhere.
    """

    name: str
    vars: tuple[tuple[str, BoundFn, BoundFn], ...]
    sign: int
    integrand: Integrand

    def __post_init__(self) -> None:
        names = tuple(v[0] for v in self.vars)
        if names != VAR_ORDER:
            raise ValueError(f"region variables must be {VAR_ORDER}, got {names}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if not isinstance(self.integrand, Integrand):
            raise TypeError(f"integrand must be an Integrand, got {self.integrand!r}")


def _lift(value: float) -> BoundFn:
    def bound(env: Env):
        return value

    return bound


def _const_bound(value: float) -> AffineBound:
    return AffineBound(const=_lift(value), slope=_lift(0.0))


def _var(name: str) -> BoundFn:
    def bound(env: Env):
        return env[name]

    return bound


def _check_domain(a: float, b: float) -> tuple[float, float]:
    a, b = float(a), float(b)
    if not a > 0 or not b > 0:
        raise ValueError(f"domain sides must be positive, got a={a}, b={b}")
    return a, b


def _ascending_cells(
    a: float, b: float, integrand: Integrand, prefix: str
) -> list[RegionSpec]:
    """The five cells with y2 > y1 (chord rising left to right)."""

    def corner_height(env: Env):
        # the line from p1 to the corner (a, b), evaluated at x2; above it
        # the chord exits through the top, below it through the right side
        x1, y1 = env["x1"], env["y1"]
        return y1 + (b - y1) / (a - x1) * (env["x2"] - x1)

    def slope(env: Env):
        return (env["y2"] - env["y1"]) / (env["x2"] - env["x1"])

    def cross_top(env: Env):
        # x where the chord reaches y = b; <= a on the steep branch
        return env["x2"] + (b - env["y2"]) / slope(env)

    chord = AffineBound(
        const=lambda env: env["y1"] - slope(env) * env["x1"],
        slope=slope,
    )
    top, right = _const_bound(b), _lift(a)
    floor = _const_bound(0.0)

    # (suffix, y2 bounds, x3 bounds, y3 bounds, sign): steep chords split
    # the p3 column before cross_top (cells 1/2) and leave it fully below
    # past it (cell 3); shallow chords split the column all the way (4/5)
    rows = [
        ("1", (corner_height, _lift(b)), (_var("x2"), cross_top), (chord, top), +1),
        ("2", (corner_height, _lift(b)), (_var("x2"), cross_top), (floor, chord), -1),
        ("3", (corner_height, _lift(b)), (cross_top, right), (floor, top), -1),
        ("4", (_var("y1"), corner_height), (_var("x2"), right), (chord, top), +1),
        ("5", (_var("y1"), corner_height), (_var("x2"), right), (floor, chord), -1),
    ]
    return _build(rows, a, b, integrand, prefix)


def _descending_cells(
    a: float, b: float, integrand: Integrand, prefix: str
) -> list[RegionSpec]:
    """The five cells with y2 < y1, numbered 6..10.

    Mirroring the rectangle top to bottom carries these onto the ascending
    cells: 6<->4, 7<->5, 8<->1, 9<->2, 10<->3 (the mirror flips the sign
    of the area, so above/below roles swap).
    """

    def corner_height(env: Env):
        # the line from p1 to the corner (a, 0); above it the chord exits
        # through the right side, below it through the bottom
        x1, y1 = env["x1"], env["y1"]
        return y1 - y1 / (a - x1) * (env["x2"] - x1)

    def fall(env: Env):
        # magnitude of the (negative) chord slope
        return (env["y1"] - env["y2"]) / (env["x2"] - env["x1"])

    def cross_bottom(env: Env):
        # x where the chord reaches y = 0; <= a on the steep branch
        return env["x2"] + env["y2"] / fall(env)

    chord = AffineBound(
        const=lambda env: env["y1"] + fall(env) * env["x1"],
        slope=lambda env: -fall(env),
    )
    top, right = _const_bound(b), _lift(a)
    floor = _const_bound(0.0)

    rows = [
        ("6", (corner_height, _var("y1")), (_var("x2"), right), (floor, chord), -1),
        ("7", (corner_height, _var("y1")), (_var("x2"), right), (chord, top), +1),
        ("8", (_lift(0.0), corner_height), (_var("x2"), cross_bottom), (floor, chord), -1),
        ("9", (_lift(0.0), corner_height), (_var("x2"), cross_bottom), (chord, top), +1),
        ("10", (_lift(0.0), corner_height), (cross_bottom, right), (floor, top), +1),
    ]
    return _build(rows, a, b, integrand, prefix)


def _build(rows, a, b, integrand, prefix) -> list[RegionSpec]:
    regions = []
    for suffix, y2_bounds, x3_bounds, y3_bounds, sign in rows:
        regions.append(
            RegionSpec(
                name=prefix + suffix,
                vars=(
                    ("x1", _lift(0.0), _lift(a)),
                    ("y1", _lift(0.0), _lift(b)),
                    ("x2", _var("x1"), _lift(a)),
                    ("y2", *y2_bounds),
                    ("x3", *x3_bounds),
                    ("y3", *y3_bounds),
                ),
                sign=sign if integrand is Integrand.SIGNED_AREA else +1,
                integrand=integrand,
            )
        )
    return regions


def rectangle_regions(a: float, b: float) -> list[RegionSpec]:
    """The five signed-area cells I1..I5 of the ascending half.

    Their signed sum over a rectangle a x b is 11*(a*b)**4/1728; dividing
    by the matching normalizer sum gives the mean area 11*a*b/144.
    """
    a, b = _check_domain(a, b)
    return _ascending_cells(a, b, Integrand.SIGNED_AREA, "I")


def normalizer_regions(a: float, b: float) -> list[RegionSpec]:
    """Unit-integrand twins J1..J5 of the ascending cells.

    Each evaluates to the (positive) measure of its cell; the five sum to
    (a*b)**3/12, half the ordered-configuration volume.
    """
    a, b = _check_domain(a, b)
    return _ascending_cells(a, b, Integrand.ONE, "J")


def square_regions(a: float) -> list[RegionSpec]:
    """All ten signed-area cells of the square, I1..I10.

    The descending five are built from their own bounds rather than by
    aliasing the ascending five, so the mirror identities (I6=I4, I7=I5,
    I8=I1, I9=I2, I10=I3) are genuine cross-checks.
    """
    a, _ = _check_domain(a, a)
    return _ascending_cells(a, a, Integrand.SIGNED_AREA, "I") + _descending_cells(
        a, a, Integrand.SIGNED_AREA, "I"
    )


def square_normalizer_regions(a: float) -> list[RegionSpec]:
    """Unit-integrand twins J1..J10 of the square cells; they sum to a**6/6."""
    a, _ = _check_domain(a, a)
    return _ascending_cells(a, a, Integrand.ONE, "J") + _descending_cells(
        a, a, Integrand.ONE, "J"
    )


class UnknownNameError(ValueError):
    """No reference value is catalogued under the requested name."""


# Exact values at the unit square; general domains scale by a monomial.
# Area-weighted cells carry (ab)^4, measures (ab)^3, the mean ab.
_AREA_CELLS = {
    "I1": Fraction(1, 34560),
    "I2": Fraction(23, 34560),
    "I3": Fraction(140, 34560),
    "I4": Fraction(19, 34560),
    "I5": Fraction(37, 34560),
    "I6": Fraction(19, 34560),
    "I7": Fraction(37, 34560),
    "I8": Fraction(1, 34560),
    "I9": Fraction(23, 34560),
    "I10": Fraction(140, 34560),
    "I15": Fraction(11, 1728),
    "II": Fraction(11, 864),
}
_MEASURE_CELLS = {
    "J1": Fraction(1, 432),
    "J2": Fraction(5, 432),
    "J3": Fraction(18, 432),
    "J4": Fraction(5, 432),
    "J5": Fraction(7, 432),
    "J6": Fraction(5, 432),
    "J7": Fraction(7, 432),
    "J8": Fraction(1, 432),
    "J9": Fraction(5, 432),
    "J10": Fraction(18, 432),
    "J15": Fraction(1, 12),
    "JJ": Fraction(1, 6),
}


def exact_reference(name: str, a=1, b=1) -> Fraction:
    """Exact value of a catalog quantity over an a x b domain.

    Known names: the cells I1..I10 and J1..J10, the sums I15 (ascending
    five), II (all ten), J15, JJ, and the mean RESULT = 11ab/144.  Floats
    are taken at their exact binary value, so powers of two stay exact.
    """
    ab = Fraction(a) * Fraction(b)
    if name in _AREA_CELLS:
        return _AREA_CELLS[name] * ab**4
    if name in _MEASURE_CELLS:
        return _MEASURE_CELLS[name] * ab**3
    if name == "RESULT":
        return Fraction(11, 144) * ab
    raise UnknownNameError(f"no reference value named {name!r}")


def sample_in_region(
    region: RegionSpec, n: int, rng: np.random.Generator
) -> np.ndarray:
    """Draw n points supported exactly on the region, as an (n, 6) array.

    Each coordinate is drawn uniformly between its bounds given the outer
    draws.  That chained law is not uniform over the cell, which does not
    matter for membership and sign checks; it covers the full cell.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    env: dict[str, np.ndarray] = {}
    for name, lo_fn, hi_fn in region.vars:
        lo = np.broadcast_to(np.asarray(lo_fn(env), dtype=float), (n,))
        hi = np.broadcast_to(np.asarray(hi_fn(env), dtype=float), (n,))
        env[name] = rng.uniform(lo, np.maximum(lo, hi))
    return np.column_stack([env[v] for v in VAR_ORDER])
