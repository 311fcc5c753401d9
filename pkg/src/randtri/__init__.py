"""Mean area of random triangles, three ways that must agree.

Vertices uniform in a rectangle or square (mean 11ab/144), uniform on the
unit square's boundary (mean 5/32), and boundary midpoint lattices whose
exact rational means approach 5/32; plus the mean tetrahedron volume in a
cube as a spatial companion.  Nested adaptive quadrature, seeded Monte
Carlo, and exact enumeration cross-check one another.
"""

from .frame import (
    expected_area_frame,
    frame_point,
    frame_sum_poly,
    side_case_value,
)
from .geometry import (
    CubeDomain,
    Orientation,
    Point2,
    Point3,
    RectDomain,
    orientation,
    signed_area,
    signed_area_exact,
    signed_area_xy,
    signed_volume_tetra,
    triangle_area,
)
from .lattice import (
    MidpointLattice,
    WorkLimitExceededError,
    enumerate_mean_area,
    midpoint_lattice,
)
from .montecarlo import (
    CubeTetrahedron,
    EstimateResult,
    FrameTriangle,
    InteriorTriangle,
    Problem,
    estimate,
    sample_frame,
    sample_interior,
)
from .quadrature import (
    DegenerateRegionError,
    QuadConfig,
    RegionResult,
    evaluate_regions,
    expected_area_interior,
    nested_quadrature,
)
from .regions import (
    AffineBound,
    Integrand,
    RegionSpec,
    UnknownNameError,
    exact_reference,
    normalizer_regions,
    rectangle_regions,
    sample_in_region,
    square_normalizer_regions,
    square_regions,
)

__version__ = "0.1.0"
