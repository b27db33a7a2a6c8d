"""Shared generators.

Random spaces use half-integer entries (0.5 .. 5.0) repaired to a metric by
min-plus closure; all sums, halves and dyadic-weight blends of such entries
are exactly representable, so equality assertions in the tests are exact
rather than tolerance-driven.
"""

from __future__ import annotations

import numpy as np
import pytest

from ghkit import Correspondence, validate_metric


def grid_space(rng: np.random.Generator, n: int, prefix: str = "p"):
    """Random n-point metric with entries on the 0.5-grid."""
    m = rng.integers(1, 11, size=(n, n)) * 0.5
    m = np.triu(m, 1)
    m = m + m.T
    for k in range(n):
        m = np.minimum(m, m[:, k, None] + m[None, k, :])
    np.fill_diagonal(m, 0.0)
    return validate_metric(m, [f"{prefix}{i}" for i in range(n)])


def line_space(points, prefix: str = "x"):
    """Points on the real line with the absolute-difference metric."""
    pts = np.asarray(points, dtype=float)
    return validate_metric(
        np.abs(pts[:, None] - pts[None, :]),
        [f"{prefix}{i}" for i in range(len(pts))],
    )


def two_point_space(d: float, labels=("a", "b")):
    return validate_metric([[0.0, d], [d, 0.0]], list(labels))


def random_correspondence(rng: np.random.Generator, n: int, m: int) -> Correspondence:
    """Random left-right-total relation, occasionally with extra pairs."""
    pairs = {(i, int(rng.integers(m))) for i in range(n)}
    covered = {j for _, j in pairs}
    pairs |= {(int(rng.integers(n)), j) for j in range(m) if j not in covered}
    for i in range(n):
        for j in range(m):
            if rng.random() < 0.15:
                pairs.add((i, j))
    return Correspondence(tuple(pairs))


def dyadic(rng: np.random.Generator, bits: int = 10) -> float:
    """Uniform dyadic rational in [0, 1] with at most ``bits`` mantissa bits;
    products with grid entries stay exact."""
    return float(rng.integers(0, (1 << bits) + 1)) / float(1 << bits)


def shuffled_copy(rng: np.random.Generator, space):
    """An isometric copy under a random relabeling; returns (copy, perm)."""
    perm = rng.permutation(space.n)
    d = space.dist[np.ix_(perm, perm)]
    copy = validate_metric(d, [f"q{i}" for i in range(space.n)])
    return copy, perm


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
