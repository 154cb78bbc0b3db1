"""Iterated Cevian subdivision of triangles, with incenter subdivision as six
linear maps on the angle simplex."""

__version__ = "0.1.0"

from ._accel import USE_NUMBA, backend_name
from .density import DensityCertificate, approximate, required_depth, verify
from .errors import (
    BudgetExceeded,
    CevianError,
    CevianFailure,
    DegenerateRegion,
    DegenerateStart,
    DegenerateTriangle,
    NegativeAngle,
    SumViolation,
)
from .geometry import (
    CENTROID,
    GERGONNE,
    INCENTER,
    LEMOINE,
    CenterStrategy,
    TriangleXY,
    angles_of,
    center_point,
    subdivide,
    vertices_from_angles,
)
from .maps import (
    MATRICES,
    RegionImage,
    apply,
    apply_word,
    contraction_check,
    preimage_step,
    preimage_word,
    region_image,
    region_min_angle_bounds,
    self_similar_indices,
    solve_all_self_similar,
)
from .simplex import (
    AngleTriple,
    PlanePoint2D,
    distance,
    embed_2d,
    make_triple,
    min_angle,
    similar,
)
from .stats import (
    CdfBounds,
    HistogramGrid,
    cdf_bounds,
    enumerate_generation,
    flatness_stats,
    histogram,
    iter_generation,
    sample_walks,
)
