"""Interpolation between finite metric spaces along an optimal correspondence.

Re-metrize the pair set of a correspondence R between X and Y with the
blended distance

    |(x, y)(x', y')| = lam * |xx'| + (1 - lam) * |yy'|,

a semi-metric that is a genuine metric for interior weights. Sliding the
weight traces a geodesic: parameter differences equal Gromov-Hausdorff
distances between the interpolants. Endpoints collapse (after identifying
zero-distance points) to spaces isometric to X and Y.

Orientation convention: ``geodesic_point(spec, t)`` uses lam = 1 - t/d so
that t = 0 lands on the X side and t = d on the Y side.

The sandwich verifier certifies segment lengths without solving any larger
distance instance: the identity pairing of R's points bounds a segment from
above, and the triangle inequality through the certified endpoint distance,
with the explicit side-correspondence distortions, bounds it from below.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .correspondences import (
    DEFAULT_BUDGET,
    Correspondence,
    GHResult,
    Relation,
    distortion,
    gh_exact,
    is_correspondence,
)
from .errors import (
    DegenerateGeodesicError,
    LambdaOutOfRangeError,
    NotACorrespondenceError,
    NotCertifiedError,
    ParameterOrderError,
    TOutOfRangeError,
)
from .spaces import FiniteMetricSpace, SemiMetricMatrix, quotient_zero_classes, validate_semi_metric

__all__ = [
    "BlendedSpace",
    "GeodesicSpec",
    "SandwichReport",
    "SANDWICH_TOLERANCE",
    "blended_space",
    "endpoint_space",
    "side_distortions",
    "geodesic_spec",
    "geodesic_point",
    "canonical_midpoint",
    "verify_sandwich",
]

SANDWICH_TOLERANCE = 1e-9


def _checked_correspondence(rel, x: FiniteMetricSpace, y: FiniteMetricSpace) -> Correspondence:
    pairs = rel.pairs if isinstance(rel, Relation) else Correspondence(tuple(rel)).pairs
    if not is_correspondence(pairs, x.n, y.n):
        raise NotACorrespondenceError("a projection is not surjective")
    return Correspondence(pairs)


def _pair_labels(pairs, x: FiniteMetricSpace, y: FiniteMetricSpace) -> tuple[str, ...]:
    return tuple(f"({x.labels[i]},{y.labels[j]})" for i, j in pairs)


def _blend_matrix(pairs, x: FiniteMetricSpace, y: FiniteMetricSpace, lam: float) -> np.ndarray:
    ii = np.asarray([i for i, _ in pairs], dtype=np.intp)
    jj = np.asarray([j for _, j in pairs], dtype=np.intp)
    return lam * x.dist[np.ix_(ii, ii)] + (1.0 - lam) * y.dist[np.ix_(jj, jj)]


@dataclass(frozen=True, eq=False)
class BlendedSpace:
    """The pair set of a correspondence carrying the blended distance.

    ``lam`` is the weight on the X coordinate. The matrix is a semi-metric,
    and a genuine metric whenever 0 < lam < 1.
    """

    base: Correspondence
    x: FiniteMetricSpace
    y: FiniteMetricSpace
    lam: float
    matrix: SemiMetricMatrix
    labels: tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.base)

    def as_metric_space(self) -> FiniteMetricSpace:
        """Materialize as a validated metric space (fails on the zero
        off-diagonal entries a degenerate weight can produce)."""
        from .spaces import validate_metric

        return validate_metric(self.matrix.dist, self.labels)


def blended_space(rel, x: FiniteMetricSpace, y: FiniteMetricSpace, lam: float) -> BlendedSpace:
    """Build the blended space over a correspondence at weight ``lam``.

    The entry for pairs (x, y), (x', y') is exactly
    ``lam * |xx'| + (1 - lam) * |yy'|``; the semi-metric axioms are
    re-verified on the computed matrix.
    """
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise LambdaOutOfRangeError(lam)
    corr = _checked_correspondence(rel, x, y)
    matrix = validate_semi_metric(_blend_matrix(corr.pairs, x, y, lam))
    return BlendedSpace(corr, x, y, lam, matrix, _pair_labels(corr.pairs, x, y))


def endpoint_space(rel, x: FiniteMetricSpace, y: FiniteMetricSpace, which: str) -> FiniteMetricSpace:
    """Collapse the blended space at a degenerate weight to a metric space.

    ``which`` is "x" (weight 1, isometric to X) or "y" (weight 0, isometric
    to Y); points at distance zero are identified.
    """
    side = which.lower()
    if side not in ("x", "y"):
        raise ValueError(f'which must be "x" or "y", got {which!r}')
    blend = blended_space(rel, x, y, 1.0 if side == "x" else 0.0)
    return quotient_zero_classes(blend.matrix, blend.labels)


def side_distortions(rel, x: FiniteMetricSpace, y: FiniteMetricSpace, lam: float) -> tuple[float, float]:
    """Distortions of the two explicit correspondences linking the blended
    space back to its ends: {(x, (x,y))} into X and {((x,y), y)} into Y.

    Both are computed directly from the matrices; they satisfy
    dis_x = (1 - lam) * dis R and dis_y = lam * dis R.
    """
    blend = blended_space(rel, x, y, lam)
    pairs = blend.base.pairs
    ii = np.asarray([i for i, _ in pairs], dtype=np.intp)
    jj = np.asarray([j for _, j in pairs], dtype=np.intp)
    e = blend.matrix.dist
    dis_x = float(np.abs(x.dist[np.ix_(ii, ii)] - e).max())
    dis_y = float(np.abs(e - y.dist[np.ix_(jj, jj)]).max())
    return dis_x, dis_y


@dataclass(frozen=True, eq=False)
class GeodesicSpec:
    """A certified optimal correspondence together with the distance it
    realizes; everything a geodesic query needs."""

    x: FiniteMetricSpace
    y: FiniteMetricSpace
    r: Correspondence
    d: float

    @classmethod
    def from_result(cls, x: FiniteMetricSpace, y: FiniteMetricSpace, result: GHResult) -> "GeodesicSpec":
        if not result.certified:
            raise NotCertifiedError(result.lower_bound, result.upper_bound)
        return cls(x, y, result.optimal, result.distance)


def geodesic_spec(x: FiniteMetricSpace, y: FiniteMetricSpace, budget: int = DEFAULT_BUDGET) -> GeodesicSpec:
    """Solve for a certified optimal correspondence and wrap it."""
    return GeodesicSpec.from_result(x, y, gh_exact(x, y, budget))


def geodesic_point(spec: GeodesicSpec, t: float):
    """The space at parameter ``t`` along the geodesic from X (t = 0) to Y
    (t = d). Endpoints come back quotiented to genuine metric spaces;
    interior points come back as (already metric) blended spaces."""
    t = float(t)
    if spec.d == 0.0:
        if t != 0.0:
            raise DegenerateGeodesicError(t)
        return endpoint_space(spec.r, spec.x, spec.y, "x")
    if not 0.0 <= t <= spec.d:
        raise TOutOfRangeError(t, spec.d)
    if t == 0.0:
        return endpoint_space(spec.r, spec.x, spec.y, "x")
    if t == spec.d:
        return endpoint_space(spec.r, spec.x, spec.y, "y")
    return blended_space(spec.r, spec.x, spec.y, 1.0 - t / spec.d)


def canonical_midpoint(x: FiniteMetricSpace, y: FiniteMetricSpace, budget: int = DEFAULT_BUDGET) -> FiniteMetricSpace:
    """The blended space at weight 1/2 over a certified optimal
    correspondence, materialized as a metric space."""
    spec = geodesic_spec(x, y, budget)
    return blended_space(spec.r, spec.x, spec.y, 0.5).as_metric_space()


@dataclass(frozen=True)
class SandwichReport:
    """Certificate that a geodesic segment has the length it should.

    ``upper_bound`` comes from the identity pairing of R's points between
    the two blended matrices; ``lower_bound`` from the triangle inequality
    through the certified endpoint distance using the side-correspondence
    distortions. The segment passes when both pinch t - s to within the
    tolerance."""

    s: float
    t: float
    target: float
    lower_bound: float
    upper_bound: float
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "t": self.t,
            "target": self.target,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def verify_sandwich(spec: GeodesicSpec, s: float, t: float) -> SandwichReport:
    """Certify d_GH(g(s), g(t)) = t - s without solving a distance instance."""
    s, t = float(s), float(t)
    if not 0.0 <= s <= t <= spec.d:
        raise ParameterOrderError(s, t, spec.d)
    target = t - s
    if spec.d == 0.0:
        return SandwichReport(s, t, 0.0, 0.0, 0.0, SANDWICH_TOLERANCE, True)

    pairs = spec.r.pairs
    lam_s = 1.0 - s / spec.d
    lam_t = 1.0 - t / spec.d
    e_s = _blend_matrix(pairs, spec.x, spec.y, lam_s)
    e_t = _blend_matrix(pairs, spec.x, spec.y, lam_t)

    upper = 0.5 * float(np.abs(e_s - e_t).max())

    ii = np.asarray([i for i, _ in pairs], dtype=np.intp)
    jj = np.asarray([j for _, j in pairs], dtype=np.intp)
    dis_x_at_s = float(np.abs(spec.x.dist[np.ix_(ii, ii)] - e_s).max())
    dis_y_at_t = float(np.abs(e_t - spec.y.dist[np.ix_(jj, jj)]).max())
    lower = spec.d - 0.5 * dis_x_at_s - 0.5 * dis_y_at_t

    passed = (upper - target <= SANDWICH_TOLERANCE) and (target - lower <= SANDWICH_TOLERANCE)
    return SandwichReport(s, t, target, lower, upper, SANDWICH_TOLERANCE, passed)
