"""Finite metric spaces as validated distance matrices.

The central type is :class:`FiniteMetricSpace`: point labels plus an n x n
float64 matrix that satisfies all metric axioms under *exact* comparisons on
the stored values (no tolerance; the inputs are given numbers, not computed
ones). Semi-metrics (zero allowed off the diagonal) are kept separate in
:class:`SemiMetricMatrix`; the quotient by zero-distance classes is the only
bridge back to a genuine metric.

Epsilon-nets use the strict convention: S is an eps-net when every point is
at distance strictly less than eps from some member of S. Much of the
literature uses <=; the strict form is what the rest of the package assumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AsymmetricError,
    BudgetExceededError,
    EmptySubsetError,
    NegativeEntryError,
    NonzeroDiagonalError,
    NotANetError,
    TriangleViolationError,
    ZeroOffDiagonalError,
)

__all__ = [
    "FiniteMetricSpace",
    "SemiMetricMatrix",
    "NetReport",
    "IsometryResult",
    "validate_metric",
    "validate_semi_metric",
    "diameter",
    "directed_distance",
    "hausdorff",
    "epsilon_net",
    "project_net",
    "quotient_zero_classes",
    "is_isometric",
    "restrict",
]


def _as_square_matrix(matrix) -> np.ndarray:
    d = np.array(matrix, dtype=np.float64, copy=True)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {d.shape}")
    if d.shape[0] == 0:
        raise ValueError("expected at least one point")
    if not np.isfinite(d).all():
        raise ValueError("matrix entries must be finite")
    return d


def _first_triangle_violation(d: np.ndarray):
    """Lexicographically first (i, j, k) with d[i,j] > d[i,k] + d[k,j], or None."""
    n = d.shape[0]
    viol = np.zeros((n, n), dtype=bool)
    for k in range(n):
        viol |= d > d[:, k : k + 1] + d[k : k + 1, :]
    if not viol.any():
        return None
    i, j = divmod(int(viol.argmax()), n)
    k = int(np.nonzero(d[i, :] + d[:, j] < d[i, j])[0][0])
    return i, j, k


def _check_axioms(d: np.ndarray, allow_zero_off_diagonal: bool) -> None:
    diag = np.diagonal(d)
    if (diag != 0).any():
        i = int(np.nonzero(diag != 0)[0][0])
        raise NonzeroDiagonalError(i, float(d[i, i]))
    if (d < 0).any():
        i, j = np.argwhere(d < 0)[0]
        raise NegativeEntryError(int(i), int(j), float(d[i, j]))
    if (d != d.T).any():
        i, j = np.argwhere(d != d.T)[0]
        raise AsymmetricError(int(i), int(j))
    if not allow_zero_off_diagonal:
        zero = d == 0
        np.fill_diagonal(zero, False)
        if zero.any():
            i, j = np.argwhere(zero)[0]
            raise ZeroOffDiagonalError(int(i), int(j))
    hit = _first_triangle_violation(d)
    if hit is not None:
        raise TriangleViolationError(*hit)


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    """A labeled n-point metric space given by its distance matrix.

    Construct untrusted data through :func:`validate_metric`. The plain
    constructor is for callers that already guarantee the axioms (matrix
    restrictions, half-sum products of valid metrics, ...): it normalizes
    and freezes the array but does not re-run the cubic triangle check.
    """

    labels: tuple[str, ...]
    dist: np.ndarray

    def __post_init__(self):
        d = np.array(self.dist, dtype=np.float64, copy=True)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError(f"distance matrix must be square, got {d.shape}")
        labels = tuple(str(x) for x in self.labels)
        if len(labels) != d.shape[0]:
            raise ValueError(f"{len(labels)} labels for {d.shape[0]} points")
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be pairwise distinct")
        if d.shape[0] == 0:
            raise ValueError("a metric space needs at least one point")
        d.setflags(write=False)
        object.__setattr__(self, "dist", d)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    def diameter(self) -> float:
        return float(self.dist.max())

    def __repr__(self):
        return f"FiniteMetricSpace(n={self.n}, diameter={self.diameter()!r})"


@dataclass(frozen=True, eq=False)
class SemiMetricMatrix:
    """Symmetric, zero-diagonal, triangle-satisfying matrix; off-diagonal
    zeros are permitted (distinct points may coincide metrically)."""

    dist: np.ndarray

    def __post_init__(self):
        d = np.array(self.dist, dtype=np.float64, copy=True)
        if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] == 0:
            raise ValueError(f"expected a non-empty square matrix, got {d.shape}")
        d.setflags(write=False)
        object.__setattr__(self, "dist", d)

    @property
    def n(self) -> int:
        return self.dist.shape[0]


@dataclass(frozen=True)
class NetReport:
    """An eps-net with its certificate.

    ``radius`` is the worst distance from any point of the covered set to its
    nearest net member; the strict definition requires radius < epsilon.
    """

    net: tuple[int, ...]
    epsilon: float
    radius: float

    def __post_init__(self):
        if not self.net:
            raise EmptySubsetError("net")
        if not self.radius < self.epsilon:
            raise NotANetError(-1, self.epsilon, self.radius)

    @property
    def size(self) -> int:
        return len(self.net)


@dataclass(frozen=True)
class IsometryResult:
    """Outcome of an isometry search: a witness mapping or a refutation."""

    isometric: bool
    mapping: tuple[int, ...] | None
    nodes: int
    reason: str = ""

    def __bool__(self) -> bool:
        return self.isometric


def validate_metric(matrix, labels: Sequence[str]) -> FiniteMetricSpace:
    """Check every metric axiom (exact comparisons) and build the space.

    Raises the structured error for the first violated axiom, scanning in a
    fixed order: nonzero diagonal, negative entry, asymmetry, zero
    off-diagonal, triangle inequality (lexicographically first witness).
    """
    d = _as_square_matrix(matrix)
    if len(labels) != d.shape[0]:
        raise ValueError(f"{len(labels)} labels for {d.shape[0]} points")
    _check_axioms(d, allow_zero_off_diagonal=False)
    return FiniteMetricSpace(tuple(str(x) for x in labels), d)


def validate_semi_metric(matrix) -> SemiMetricMatrix:
    """Like :func:`validate_metric` but off-diagonal zeros are allowed."""
    d = _as_square_matrix(matrix)
    _check_axioms(d, allow_zero_off_diagonal=True)
    return SemiMetricMatrix(d)


def diameter(space: FiniteMetricSpace) -> float:
    """Largest pairwise distance (0 for a one-point space)."""
    return space.diameter()


def _index_array(space_n: int, subset: Iterable[int], name: str) -> np.ndarray:
    idx = sorted({int(i) for i in subset})
    if not idx:
        raise EmptySubsetError(name)
    if idx[0] < 0 or idx[-1] >= space_n:
        raise ValueError(f"{name} contains an index outside 0..{space_n - 1}")
    return np.array(idx, dtype=np.intp)


def directed_distance(space: FiniteMetricSpace, a: Iterable[int], b: Iterable[int]) -> float:
    """Directed distance d(B, A): the worst distance from a point of B to A.

    Computes max over b in B of min over a in A of dist(b, a).
    """
    ia = _index_array(space.n, a, "A")
    ib = _index_array(space.n, b, "B")
    return float(space.dist[np.ix_(ib, ia)].min(axis=1).max())


def hausdorff(space: FiniteMetricSpace, a: Iterable[int], b: Iterable[int]) -> float:
    """Hausdorff distance between two non-empty subsets: the larger of the
    two directed distances."""
    return max(directed_distance(space, a, b), directed_distance(space, b, a))


def _greedy_farthest_point(
    d: np.ndarray, epsilon: float, max_points: int | None = None
) -> tuple[list[int], float]:
    """Farthest-point sampling: seed index 0, then repeatedly add the point
    farthest from the current net (ties to the lowest index) while that
    distance is >= epsilon. Returns (chosen order, final covering radius).

    With ``max_points`` set, stops early at that size even if the target
    radius has not been reached; the returned radius is then >= epsilon.
    """
    chosen = [0]
    to_net = d[0].copy()
    while True:
        far = int(to_net.argmax())
        gap = float(to_net[far])
        if gap < epsilon:
            break
        if max_points is not None and len(chosen) >= max_points:
            break
        chosen.append(far)
        np.minimum(to_net, d[far], out=to_net)
    return chosen, float(to_net.max())


def epsilon_net(space: FiniteMetricSpace, epsilon: float) -> NetReport:
    """Greedy eps-net by farthest-point sampling, with a radius certificate.

    Deterministic: seed is index 0 and ties go to the lowest index, so the
    same space and epsilon always give the same net.
    """
    eps = float(epsilon)
    if not eps > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon!r}")
    chosen, radius = _greedy_farthest_point(space.dist, eps)
    return NetReport(tuple(sorted(chosen)), eps, radius)


def _net_radius_within(d: np.ndarray, points: np.ndarray, net: np.ndarray) -> float:
    return float(d[np.ix_(points, net)].min(axis=1).max())


def project_net(
    space: FiniteMetricSpace,
    s: Iterable[int],
    y: Iterable[int],
    epsilon: float,
) -> NetReport:
    """Push an eps-net S of the whole space into a subset Y, giving a
    (2 eps)-net of Y with at most ``len(S)`` points.

    For each net point s that has some member of Y strictly within eps, the
    nearest such member is included (ties to the lowest index). Every y in Y
    then sits within eps of some s, whose chosen member is within eps of s,
    so within 2 eps of y by the triangle inequality.

    Raises NotANet if S is not actually an eps-net of the space.
    """
    eps = float(epsilon)
    if not eps > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon!r}")
    d = space.dist
    si = _index_array(space.n, s, "S")
    yi = _index_array(space.n, y, "Y")

    cover = d[:, si].min(axis=1)
    if (cover >= eps).any():
        witness = int(np.nonzero(cover >= eps)[0][0])
        raise NotANetError(witness, eps, float(cover[witness]))

    picked: set[int] = set()
    for spoint in si:
        dy = d[spoint, yi]
        inside = dy < eps
        if inside.any():
            best = int(np.nonzero(inside)[0][np.argmin(dy[inside])])
            picked.add(int(yi[best]))
    net = np.array(sorted(picked), dtype=np.intp)
    radius = _net_radius_within(d, yi, net)
    return NetReport(tuple(int(t) for t in net), 2.0 * eps, radius)


def quotient_zero_classes(semi: SemiMetricMatrix, labels: Sequence[str]) -> FiniteMetricSpace:
    """Merge points at distance zero and return the resulting metric space.

    Zero distance is an equivalence relation under the triangle inequality,
    and all members of a class have identical rows (exactly, on the stored
    floats), so the quotient matrix is well defined. Classes are ordered by
    first occurrence; each class is labeled by its lexicographically least
    member label.
    """
    d = semi.dist
    n = d.shape[0]
    if len(labels) != n:
        raise ValueError(f"{len(labels)} labels for {n} points")
    class_of = np.full(n, -1, dtype=np.intp)
    reps: list[int] = []
    members: list[list[int]] = []
    for i in range(n):
        if class_of[i] >= 0:
            continue
        same = np.nonzero(d[i] == 0)[0]
        class_of[same] = len(reps)
        reps.append(i)
        members.append([int(j) for j in same])
    rep_idx = np.array(reps, dtype=np.intp)
    q = d[np.ix_(rep_idx, rep_idx)]
    q_labels = [min(str(labels[j]) for j in group) for group in members]
    return validate_metric(q, q_labels)


def restrict(space: FiniteMetricSpace, subset: Iterable[int]) -> FiniteMetricSpace:
    """The subspace induced on a non-empty index subset (ascending order)."""
    idx = _index_array(space.n, subset, "subset")
    return FiniteMetricSpace(
        tuple(space.labels[int(i)] for i in idx),
        space.dist[np.ix_(idx, idx)],
    )


def is_isometric(
    x: FiniteMetricSpace,
    y: FiniteMetricSpace,
    budget: int = 1_000_000,
) -> IsometryResult:
    """Search for a distance-preserving bijection (exact entry equality).

    Backtracking over point assignments, pruned by sorted-row signature
    mismatch; intended for spaces of up to ~10 points. A size mismatch is a
    refutation, not an error. Raises BudgetExceeded if the node budget is
    hit before the search resolves.
    """
    if x.n != y.n:
        return IsometryResult(False, None, 0, "sizes differ")
    n = x.n
    dx, dy = x.dist, y.dist

    sig_x = [tuple(np.sort(dx[i])) for i in range(n)]
    sig_y = [tuple(np.sort(dy[j])) for j in range(n)]
    if sorted(sig_x) != sorted(sig_y):
        return IsometryResult(False, None, 0, "distance multisets differ")

    candidates = [[j for j in range(n) if sig_y[j] == sig_x[i]] for i in range(n)]
    mapping = [-1] * n
    used = [False] * n
    nodes = 0

    def extend(i: int) -> bool:
        nonlocal nodes
        if i == n:
            return True
        for j in candidates[i]:
            if used[j]:
                continue
            nodes += 1
            if nodes > budget:
                raise BudgetExceededError(budget)
            if all(dx[i, i2] == dy[j, mapping[i2]] for i2 in range(i)):
                mapping[i] = j
                used[j] = True
                if extend(i + 1):
                    return True
                used[j] = False
                mapping[i] = -1
        return False

    if extend(0):
        return IsometryResult(True, tuple(mapping), nodes)
    return IsometryResult(False, None, nodes, "no distance-preserving bijection")
