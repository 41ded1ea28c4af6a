"""ehrtomo: exact lattice-point data and geometric tomography for convex
bodies — pseudopyramid volumes, brightness functions, spherical projection
areas, and an end-to-end comparator driven by integer-point counts."""

from .bodies import (
    Ball,
    Body,
    BoundingRadius,
    HPolytope,
    VPolytope,
    ball,
    body_from_json,
    body_to_json,
    bounding_radius,
    contains,
    dilate,
    hpolytope,
    is_symmetric,
    ray_exit_parameter,
    translate,
    vpolytope,
)
from .errors import (
    DegenerateInput,
    DimensionMismatch,
    EhrtomoError,
    EmptyFrontShell,
    MuTooSmall,
    NonConvergence,
    NonpositiveDilation,
    OriginInside,
    ToleranceTooSmall,
    UnboundedBody,
)
from .geomcore import (
    Facet,
    Hull,
    convex_hull,
    lp_membership,
    min_norm_point,
    min_norm_point_exact,
    polytope_volume,
)
from .lattice import CountProfile, CountQuery, count, count_profile, volume_from_counts
from .projections import (
    DirectionSample,
    ShadowRegion,
    brightness_facet_sum,
    brightness_hull,
    hausdorff_distance,
    shadow_hausdorff_measured,
    shadow_regions,
    spherical_area,
)
from .pseudopyramid import (
    PseudopyramidRecord,
    ppyr_contains,
    ppyr_polytope,
    ppyr_record,
    ppyr_volume,
    ppyr_volume_exact,
    ppyr_volume_montecarlo,
    radii,
)
from .tomography import (
    CompareRow,
    CompareVerdict,
    ConvergenceRow,
    ConvergenceTable,
    ProbeMismatch,
    compare_bodies,
    ehrhart_equality_probe,
    ppyr_limit_brightness,
    rational_directions,
    spherical_limit_table,
)

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "Body",
    "BoundingRadius",
    "CompareRow",
    "CompareVerdict",
    "ConvergenceRow",
    "ConvergenceTable",
    "CountProfile",
    "CountQuery",
    "DegenerateInput",
    "DimensionMismatch",
    "DirectionSample",
    "EhrtomoError",
    "EmptyFrontShell",
    "Facet",
    "HPolytope",
    "Hull",
    "MuTooSmall",
    "NonConvergence",
    "NonpositiveDilation",
    "OriginInside",
    "ProbeMismatch",
    "PseudopyramidRecord",
    "ShadowRegion",
    "ToleranceTooSmall",
    "UnboundedBody",
    "VPolytope",
    "ball",
    "body_from_json",
    "body_to_json",
    "bounding_radius",
    "brightness_facet_sum",
    "brightness_hull",
    "compare_bodies",
    "contains",
    "convex_hull",
    "count",
    "count_profile",
    "dilate",
    "ehrhart_equality_probe",
    "hausdorff_distance",
    "hpolytope",
    "is_symmetric",
    "lp_membership",
    "min_norm_point",
    "min_norm_point_exact",
    "polytope_volume",
    "ppyr_contains",
    "ppyr_limit_brightness",
    "ppyr_polytope",
    "ppyr_record",
    "ppyr_volume",
    "ppyr_volume_exact",
    "ppyr_volume_montecarlo",
    "radii",
    "rational_directions",
    "ray_exit_parameter",
    "shadow_hausdorff_measured",
    "shadow_regions",
    "spherical_area",
    "spherical_limit_table",
    "translate",
    "volume_from_counts",
    "vpolytope",
]
