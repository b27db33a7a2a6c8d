"""Finite-net pipeline for classical compact spaces at desk scale.

Samplers produce exact matrices for the unit circle (arc length), an
interval, and explicit Euclidean point sets. Net sequences pick 1/n-nets
inside the samples, canonical midpoints are built between the net-induced
subspaces, and each stage is checked: midpoint diameters stay under the
family bound, and pushing the half-sum product's eps-net into the midpoint
yields a (2 eps)-net of at most N(eps)^2 points.

Numerical note: circle and interval step sizes are quantized to the 2^-40
grid (an absolute error below 1e-11 at these scales). All sampler entries,
their sums and their halves are then exactly representable, so the computed
matrices pass the exact metric-axiom checks at any resolution instead of
relying on rounding luck.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .correspondences import DEFAULT_BUDGET, Correspondence, gh_exact
from .errors import BadResolutionError, SizeOverflowError, TooCoarseError
from .geodesics import GeodesicSpec, SandwichReport, blended_space, verify_sandwich
from .spaces import (
    FiniteMetricSpace,
    NetReport,
    _greedy_farthest_point,
    epsilon_net,
    project_net,
    restrict,
    validate_metric,
)

__all__ = [
    "SampledSpace",
    "BoundednessReport",
    "NetCheck",
    "MidpointStep",
    "PRODUCT_SIZE_CAP",
    "sample_space",
    "net_sequence",
    "product_half_sum",
    "midpoint_sequence",
    "boundedness_report",
]

PRODUCT_SIZE_CAP = 10_000
_STEP_QUANTUM = 2.0 ** -40


def _quantize_step(step: float) -> float:
    """Snap a step to the 2^-40 grid so integer multiples stay exact."""
    return round(step / _STEP_QUANTUM) * _STEP_QUANTUM


@dataclass(frozen=True, eq=False)
class SampledSpace:
    """A finite sample of a classical compact space.

    ``mesh`` is the covering radius of the sample inside the underlying
    continuum (0 for an explicit point set, which is its own space).
    """

    kind: str
    resolution: int
    space: FiniteMetricSpace
    mesh: float


def _index_labels(prefix: str, k: int) -> list[str]:
    width = len(str(k - 1))
    return [f"{prefix}{i:0{width}d}" for i in range(k)]


def sample_space(
    kind: str,
    resolution: int,
    *,
    length: float = 1.0,
    points: Sequence[Sequence[float]] | None = None,
) -> SampledSpace:
    """Sample one of the supported space kinds.

    circle      unit radius, arc-length metric, angles 2*pi*i/k
    interval    [0, length], positions i*length/(k-1)
    euclidean   explicit coordinates (``points``); resolution = point count
    """
    k = int(resolution)
    if k < 1:
        raise BadResolutionError(f"resolution must be >= 1, got {resolution}")

    if kind == "circle":
        step = _quantize_step(2.0 * math.pi / k)
        idx = np.arange(k)
        hops = np.abs(idx[:, None] - idx[None, :])
        hops = np.minimum(hops, k - hops)
        dist = step * hops
        mesh = math.pi / k
        space = validate_metric(dist, _index_labels("c", k))
    elif kind == "interval":
        if k < 2:
            raise BadResolutionError("interval sampling needs at least 2 points")
        length = float(length)
        if not length > 0:
            raise BadResolutionError(f"interval length must be positive, got {length!r}")
        step = _quantize_step(length / (k - 1))
        idx = np.arange(k)
        dist = step * np.abs(idx[:, None] - idx[None, :])
        mesh = length / (2.0 * (k - 1))
        space = validate_metric(dist, _index_labels("t", k))
    elif kind == "euclidean":
        if points is None:
            raise BadResolutionError("euclidean sampling needs explicit points")
        coords = np.asarray(points, dtype=np.float64)
        if coords.ndim != 2 or coords.shape[0] < 1:
            raise BadResolutionError(f"expected a non-empty 2-d point array, got shape {coords.shape}")
        if coords.shape[0] != k:
            raise BadResolutionError(f"resolution {k} does not match {coords.shape[0]} points")
        delta = coords[:, None, :] - coords[None, :, :]
        dist = np.sqrt((delta * delta).sum(axis=2))
        mesh = 0.0
        space = validate_metric(dist, _index_labels("e", k))
    else:
        raise BadResolutionError(f"unknown kind {kind!r}; expected circle, interval or euclidean")

    return SampledSpace(kind, k, space, mesh)


def net_sequence(sampled: SampledSpace, n: int) -> NetReport:
    """A 1/n-net inside the sample, provided the sampling is fine enough
    (mesh strictly below 1/(2n)) for the sampled net to track the continuum."""
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    needed = 1.0 / (2.0 * n)
    if not sampled.mesh < needed:
        raise TooCoarseError(sampled.mesh, needed)
    return epsilon_net(sampled.space, 1.0 / n)


def _pair_labels(x: FiniteMetricSpace, y: FiniteMetricSpace) -> list[str]:
    return [f"({lx},{ly})" for lx in x.labels for ly in y.labels]


def product_half_sum(xn: FiniteMetricSpace, yn: FiniteMetricSpace) -> FiniteMetricSpace:
    """The product point set with the half-sum distance
    ((x,y),(x',y')) -> (|xx'| + |yy'|) / 2.

    Point (i, j) sits at flat index i * |Y| + j. Distinct pairs differ in a
    coordinate, so the result is a genuine metric (axioms hold by
    construction; no revalidation is run, which keeps large products cheap).
    """
    size = xn.n * yn.n
    if size > PRODUCT_SIZE_CAP:
        raise SizeOverflowError(size, PRODUCT_SIZE_CAP)
    m = yn.n
    dist = 0.5 * (
        np.kron(xn.dist, np.ones((m, m))) + np.kron(np.ones((xn.n, xn.n)), yn.dist)
    )
    return FiniteMetricSpace(tuple(_pair_labels(xn, yn)), dist)


@dataclass(frozen=True)
class NetCheck:
    """One Prop-2 style size check: the product's eps-net, projected into
    the midpoint, must be a (2 eps)-net of at most N(eps)^2 points."""

    epsilon: float
    per_side_net_size: int
    product_net_size: int
    projected: NetReport
    size_bound: int
    ok: bool

    def to_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "per_side_net_size": self.per_side_net_size,
            "product_net_size": self.product_net_size,
            "projected_size": self.projected.size,
            "projected_epsilon": self.projected.epsilon,
            "projected_radius": self.projected.radius,
            "size_bound": self.size_bound,
            "ok": self.ok,
        }


@dataclass(frozen=True, eq=False)
class MidpointStep:
    """Everything recorded for one resolution n of the midpoint pipeline."""

    n: int
    epsilon: float
    net_x: tuple[int, ...]
    radius_x: float
    net_x_achieved: bool
    net_y: tuple[int, ...]
    radius_y: float
    net_y_achieved: bool
    distance: float
    correspondence: Correspondence
    midpoint: FiniteMetricSpace
    midpoint_diameter: float
    diameter_bound: float
    diameter_ok: bool
    sandwich_first: SandwichReport
    sandwich_second: SandwichReport
    midpoint_certified: bool
    net_checks: tuple[NetCheck, ...]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "epsilon": self.epsilon,
            "net_x": list(self.net_x),
            "radius_x": self.radius_x,
            "net_x_achieved": self.net_x_achieved,
            "net_y": list(self.net_y),
            "radius_y": self.radius_y,
            "net_y_achieved": self.net_y_achieved,
            "distance": self.distance,
            "correspondence": self.correspondence.to_json(),
            "midpoint_points": self.midpoint.n,
            "midpoint_diameter": self.midpoint_diameter,
            "diameter_bound": self.diameter_bound,
            "diameter_ok": self.diameter_ok,
            "sandwich_first": self.sandwich_first.to_dict(),
            "sandwich_second": self.sandwich_second.to_dict(),
            "midpoint_certified": self.midpoint_certified,
            "net_checks": [c.to_dict() for c in self.net_checks],
        }


def _capped_net(space: FiniteMetricSpace, epsilon: float, cap: int | None):
    chosen, radius = _greedy_farthest_point(space.dist, epsilon, max_points=cap)
    return tuple(sorted(chosen)), radius, radius < epsilon


def midpoint_sequence(
    a: SampledSpace,
    b: SampledSpace,
    ns: Iterable[int],
    *,
    epsilons: Sequence[float] = (0.5, 1.0),
    max_net_points: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> list[MidpointStep]:
    """Canonical midpoints of net pairs at each requested resolution.

    For each n, greedy 1/n-nets are selected in both samples (optionally
    truncated at ``max_net_points``; the recorded radius then reports what
    the truncated selection actually covers). The certified midpoint of the
    induced subspaces is built and checked: diameter below the family bound
    D, sandwich certification of both halves, and for every requested eps
    a projected (2 eps)-net of at most N(eps)^2 points.

    Raises NotCertified if the solver budget is exhausted for some n.
    """
    diameter_bound = max(a.space.diameter(), b.space.diameter())
    steps: list[MidpointStep] = []
    for n in ns:
        n = int(n)
        eps_n = 1.0 / n
        for sampled in (a, b):
            needed = 1.0 / (2.0 * n)
            if not sampled.mesh < needed:
                raise TooCoarseError(sampled.mesh, needed)
        net_x, radius_x, ok_x = _capped_net(a.space, eps_n, max_net_points)
        net_y, radius_y, ok_y = _capped_net(b.space, eps_n, max_net_points)
        xn = restrict(a.space, net_x)
        yn = restrict(b.space, net_y)

        spec = GeodesicSpec.from_result(xn, yn, gh_exact(xn, yn, budget))
        midpoint = blended_space(spec.r, xn, yn, 0.5).as_metric_space()
        half = spec.d / 2.0
        first = verify_sandwich(spec, 0.0, half)
        second = verify_sandwich(spec, half, spec.d)

        product = product_half_sum(xn, yn)
        pair_index = {(i, j): i * yn.n + j for i in range(xn.n) for j in range(yn.n)}
        r_flat = [pair_index[p] for p in spec.r.pairs]
        checks = []
        for eps in epsilons:
            eps = float(eps)
            net_a = epsilon_net(xn, eps)
            net_b = epsilon_net(yn, eps)
            per_side = max(net_a.size, net_b.size)
            product_net = [pair_index[(i, j)] for i in net_a.net for j in net_b.net]
            projected = project_net(product, product_net, r_flat, eps)
            checks.append(
                NetCheck(
                    epsilon=eps,
                    per_side_net_size=per_side,
                    product_net_size=len(product_net),
                    projected=projected,
                    size_bound=per_side * per_side,
                    ok=projected.size <= per_side * per_side,
                )
            )

        steps.append(
            MidpointStep(
                n=n,
                epsilon=eps_n,
                net_x=net_x,
                radius_x=radius_x,
                net_x_achieved=ok_x,
                net_y=net_y,
                radius_y=radius_y,
                net_y_achieved=ok_y,
                distance=spec.d,
                correspondence=spec.r,
                midpoint=midpoint,
                midpoint_diameter=midpoint.diameter(),
                diameter_bound=diameter_bound,
                diameter_ok=midpoint.diameter() <= diameter_bound,
                sandwich_first=first,
                sandwich_second=second,
                midpoint_certified=first.passed and second.passed,
                net_checks=tuple(checks),
            )
        )
    return steps


@dataclass(frozen=True)
class BoundednessReport:
    """Empirical uniform-total-boundedness data for a family of spaces:
    the common diameter bound and the worst greedy eps-net size."""

    diameter_bound: float
    epsilon: float
    max_net_size: int
    per_space: tuple[tuple[float, int], ...]

    def to_dict(self) -> dict:
        return {
            "diameter_bound": self.diameter_bound,
            "epsilon": self.epsilon,
            "max_net_size": self.max_net_size,
            "per_space": [{"diameter": d, "net_size": s} for d, s in self.per_space],
        }


def boundedness_report(family: Sequence[FiniteMetricSpace], epsilon: float) -> BoundednessReport:
    """Per-space diameters and greedy eps-net sizes, with their maxima."""
    if not family:
        raise ValueError("family must be non-empty")
    eps = float(epsilon)
    rows = [(space.diameter(), epsilon_net(space, eps).size) for space in family]
    return BoundednessReport(
        diameter_bound=max(d for d, _ in rows),
        epsilon=eps,
        max_net_size=max(s for _, s in rows),
        per_space=tuple(rows),
    )
