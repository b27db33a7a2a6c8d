"""Exact Gromov-Hausdorff distances, optimal correspondences, geodesics and
epsilon-net machinery for finite metric spaces."""

from .approx import (
    BoundednessReport,
    MidpointStep,
    NetCheck,
    SampledSpace,
    boundedness_report,
    midpoint_sequence,
    net_sequence,
    product_half_sum,
    sample_space,
)
from .correspondences import (
    DEFAULT_BUDGET,
    Correspondence,
    GHResult,
    Relation,
    distortion,
    enumerate_correspondences,
    gh_brute,
    gh_exact,
    gh_lower_bound,
    gh_upper_bound_from,
    is_correspondence,
    map_distortion,
)
from .geodesics import (
    BlendedSpace,
    GeodesicSpec,
    SandwichReport,
    blended_space,
    canonical_midpoint,
    endpoint_space,
    geodesic_point,
    geodesic_spec,
    side_distortions,
    verify_sandwich,
)
from .spaces import (
    FiniteMetricSpace,
    IsometryResult,
    NetReport,
    SemiMetricMatrix,
    diameter,
    directed_distance,
    epsilon_net,
    hausdorff,
    is_isometric,
    project_net,
    quotient_zero_classes,
    restrict,
    validate_metric,
    validate_semi_metric,
)

__version__ = "0.1.0"

__all__ = [
    "BlendedSpace",
    "BoundednessReport",
    "Correspondence",
    "DEFAULT_BUDGET",
    "FiniteMetricSpace",
    "GHResult",
    "GeodesicSpec",
    "IsometryResult",
    "MidpointStep",
    "NetCheck",
    "NetReport",
    "Relation",
    "SampledSpace",
    "SandwichReport",
    "SemiMetricMatrix",
    "blended_space",
    "boundedness_report",
    "canonical_midpoint",
    "diameter",
    "directed_distance",
    "distortion",
    "endpoint_space",
    "enumerate_correspondences",
    "epsilon_net",
    "geodesic_point",
    "geodesic_spec",
    "gh_brute",
    "gh_exact",
    "gh_lower_bound",
    "gh_upper_bound_from",
    "hausdorff",
    "is_correspondence",
    "is_isometric",
    "map_distortion",
    "midpoint_sequence",
    "net_sequence",
    "product_half_sum",
    "project_net",
    "quotient_zero_classes",
    "restrict",
    "sample_space",
    "side_distortions",
    "validate_metric",
    "validate_semi_metric",
    "verify_sandwich",
]
