"""Correspondences between finite metric spaces and the distance solver.

The Gromov-Hausdorff distance between finite spaces is half the minimum
distortion over all correspondences (left-right-total relations). Two routes
are provided and kept independent on purpose:

* :func:`gh_brute` enumerates every correspondence (hard cap n*m <= 25) and
  is the oracle;
* :func:`gh_exact` is a certified branch-and-bound that assigns to each
  X-point a non-empty subset of Y, pruning on the exact partial distortion
  of the pairs fixed so far.

Search design notes: X-points are processed in decreasing eccentricity
order (largest row maximum first) since they constrain the distortion
earliest; Y-subsets are tried by increasing cardinality, lexicographic
within, so results are deterministic. The incumbent is seeded from greedy
structure-matching maps in both directions, unioned into a correspondence.
Distortion is a max of absolute differences of input entries, so there is
no error amplification anywhere in the search.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    EmptySubsetError,
    IndexOutOfRangeError,
    NotACorrespondenceError,
    TooLargeError,
)
from .spaces import FiniteMetricSpace

__all__ = [
    "Relation",
    "Correspondence",
    "GHResult",
    "DEFAULT_BUDGET",
    "ENUMERATION_CAP",
    "distortion",
    "map_distortion",
    "is_correspondence",
    "enumerate_correspondences",
    "gh_brute",
    "gh_exact",
    "gh_lower_bound",
    "gh_upper_bound_from",
]

ENUMERATION_CAP = 25
DEFAULT_BUDGET = 10_000_000


def _normalize_pairs(pairs: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    out = tuple(sorted({(int(i), int(j)) for i, j in pairs}))
    if not out:
        raise EmptySubsetError("relation")
    return out


@dataclass(frozen=True)
class Relation:
    """A non-empty set of (X-index, Y-index) pairs, kept sorted."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", _normalize_pairs(self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def to_json(self) -> list[list[int]]:
        return [[i, j] for i, j in self.pairs]


class Correspondence(Relation):
    """A relation whose projections cover all of X and all of Y.

    The plain constructor trusts the caller; use :meth:`checked` to validate
    totality against explicit sizes.
    """

    @classmethod
    def checked(cls, pairs: Iterable[tuple[int, int]], n: int, m: int) -> "Correspondence":
        norm = _normalize_pairs(pairs)
        if not is_correspondence(norm, n, m):
            missing_x = set(range(n)) - {i for i, _ in norm}
            missing_y = set(range(m)) - {j for _, j in norm}
            raise NotACorrespondenceError(
                f"uncovered X indices {sorted(missing_x)}, Y indices {sorted(missing_y)}"
            )
        return cls(norm)


@dataclass(frozen=True)
class GHResult:
    """A Gromov-Hausdorff computation with its certificate.

    ``distance`` is always ``distortion / 2`` of the reported optimal
    correspondence. When ``certified`` the bounds collapse onto the distance;
    otherwise they bracket the true optimum (budget exhaustion is a degraded
    result, not an error).
    """

    distance: float
    optimal: Correspondence
    distortion: float
    lower_bound: float
    upper_bound: float
    nodes_explored: int
    certified: bool

    def to_dict(self) -> dict:
        return {
            "distance": self.distance,
            "distortion": self.distortion,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "nodes_explored": self.nodes_explored,
            "certified": self.certified,
            "optimal": self.optimal.to_json(),
        }


def _pairs_of(rel) -> tuple[tuple[int, int], ...]:
    if isinstance(rel, Relation):
        return rel.pairs
    return _normalize_pairs(rel)


def _pair_arrays(
    pairs: Sequence[tuple[int, int]], n: int, m: int
) -> tuple[np.ndarray, np.ndarray]:
    for i, j in pairs:
        if not 0 <= i < n:
            raise IndexOutOfRangeError(i, n, "X")
        if not 0 <= j < m:
            raise IndexOutOfRangeError(j, m, "Y")
    arr = np.asarray(pairs, dtype=np.intp)
    return arr[:, 0], arr[:, 1]


def distortion(rel, x: FiniteMetricSpace, y: FiniteMetricSpace) -> float:
    """Largest |d_X(x, x') - d_Y(y, y')| over pairs of related pairs."""
    pairs = _pairs_of(rel)
    ii, jj = _pair_arrays(pairs, x.n, y.n)
    return float(np.abs(x.dist[np.ix_(ii, ii)] - y.dist[np.ix_(jj, jj)]).max())


def map_distortion(f: Sequence[int], x: FiniteMetricSpace, y: FiniteMetricSpace) -> float:
    """Distortion of the graph of a total map from X-indices to Y-indices."""
    if len(f) != x.n:
        raise ValueError(f"map has {len(f)} values for {x.n} points")
    return distortion([(i, int(j)) for i, j in enumerate(f)], x, y)


def is_correspondence(rel, n: int, m: int) -> bool:
    """True iff both projections of the relation are surjective."""
    pairs = _pairs_of(rel)
    return ({i for i, _ in pairs} == set(range(n))
            and {j for _, j in pairs} == set(range(m)))


def _check_enumeration_cap(n: int, m: int) -> None:
    if n < 1 or m < 1:
        raise ValueError("spaces must be non-empty")
    if n * m > ENUMERATION_CAP:
        raise TooLargeError(n, m, ENUMERATION_CAP)


def _covering_masks(n: int, m: int, lo: int, hi: int) -> np.ndarray:
    """Masks in [lo, hi) over the n*m grid whose bit pattern covers every
    row and every column (bit i*m+j is cell (i, j))."""
    arr = np.arange(lo, hi, dtype=np.int64)
    ok = np.ones(arr.shape, dtype=bool)
    row_full = (1 << m) - 1
    for i in range(n):
        ok &= ((arr >> (i * m)) & row_full) != 0
    for j in range(m):
        col = 0
        for i in range(n):
            col |= 1 << (i * m + j)
        ok &= (arr & col) != 0
    return arr[ok]


def _mask_cells(mask: int) -> list[int]:
    cells = []
    while mask:
        low = mask & -mask
        cells.append(low.bit_length() - 1)
        mask ^= low
    return cells


def enumerate_correspondences(n: int, m: int) -> Iterator[Correspondence]:
    """Every correspondence between index sets of sizes n and m, exactly
    once, in increasing order of the characteristic bitmask of the n x m
    grid (cell (i, j) is bit i*m + j). Capped at n*m <= 25."""
    _check_enumeration_cap(n, m)

    def gen():
        total = 1 << (n * m)
        chunk = 1 << 20
        for lo in range(0, total, chunk):
            for mask in _covering_masks(n, m, lo, min(lo + chunk, total)):
                pairs = [divmod(c, m) for c in _mask_cells(int(mask))]
                yield Correspondence(tuple(pairs))

    return gen()


def gh_brute(x: FiniteMetricSpace, y: FiniteMetricSpace) -> GHResult:
    """Oracle: minimize the distortion over every correspondence.

    Returns the first minimizer in enumeration order. Exponential in n*m;
    guarded by the same n*m <= 25 cap as the enumeration.
    """
    n, m = x.n, y.n
    _check_enumeration_cap(n, m)

    # cell-by-cell |d_X - d_Y| table, indexed by flat cells i*m+j
    diff = np.abs(
        np.kron(x.dist, np.ones((m, m))) - np.kron(np.ones((n, n)), y.dist)
    ).tolist()

    best = np.inf
    best_mask = None
    count = 0
    total = 1 << (n * m)
    chunk = 1 << 20
    for lo in range(0, total, chunk):
        for mask in _covering_masks(n, m, lo, min(lo + chunk, total)):
            cells = _mask_cells(int(mask))
            count += 1
            dis = 0.0
            for a in range(len(cells)):
                row = diff[cells[a]]
                for b in range(a):
                    v = row[cells[b]]
                    if v > dis:
                        dis = v
            if dis < best:
                best = dis
                best_mask = int(mask)

    pairs = tuple(divmod(c, m) for c in _mask_cells(best_mask))
    optimal = Correspondence(pairs)
    d = float(best) / 2.0
    return GHResult(d, optimal, float(best), d, d, count, True)


def gh_lower_bound(x: FiniteMetricSpace, y: FiniteMetricSpace) -> float:
    """Half the diameter gap: every correspondence distorts at least
    |diam X - diam Y|."""
    return abs(x.diameter() - y.diameter()) / 2.0


def gh_upper_bound_from(rel, x: FiniteMetricSpace, y: FiniteMetricSpace) -> float:
    """Half the distortion of a given correspondence."""
    pairs = _pairs_of(rel)
    if not is_correspondence(pairs, x.n, y.n):
        raise NotACorrespondenceError("a projection is not surjective")
    return distortion(pairs, x, y) / 2.0


def _greedy_map(ad: np.ndarray, bd: np.ndarray) -> list[int]:
    """Map each A-point (decreasing eccentricity order) to the B-point that
    least increases the partial distortion; ties to the lowest index."""
    na, nb = ad.shape[0], bd.shape[0]
    order = sorted(range(na), key=lambda i: (-float(ad[i].max()), i))
    f = [0] * na
    aa: list[int] = []
    bb: list[int] = []
    for a in order:
        if aa:
            cost = np.abs(ad[a, aa][None, :] - bd[:, bb]).max(axis=1)
            b = int(cost.argmin())
        else:
            b = 0
        f[a] = b
        aa.append(a)
        bb.append(b)
    return f


def _greedy_incumbent(x: FiniteMetricSpace, y: FiniteMetricSpace) -> Correspondence:
    fx = _greedy_map(x.dist, y.dist)
    fy = _greedy_map(y.dist, x.dist)
    pairs = {(i, j) for i, j in enumerate(fx)} | {(i, j) for j, i in enumerate(fy)}
    return Correspondence(tuple(pairs))


class _Abort(Exception):
    pass


def gh_exact(
    x: FiniteMetricSpace,
    y: FiniteMetricSpace,
    budget: int = DEFAULT_BUDGET,
) -> GHResult:
    """Certified branch-and-bound for the Gromov-Hausdorff distance.

    Each X-point (decreasing eccentricity) is assigned a non-empty subset of
    Y; the exact distortion of the pairs fixed so far is a lower bound for
    every completion and prunes against the incumbent. A leaf is feasible
    when Y is fully covered. If the tree is exhausted the result is
    certified; if the node budget runs out first, the result reports
    ``certified=False`` with bounds bracketing the optimum.
    """
    n, m = x.n, y.n
    xd, yd = x.dist, y.dist

    incumbent = _greedy_incumbent(x, y)
    best_dis = distortion(incumbent, x, y)
    best_pairs = incumbent.pairs

    order = sorted(range(n), key=lambda i: (-float(xd[i].max()), i))
    yd_list = yd.tolist()

    # subsets of Y in branch order: increasing cardinality, lexicographic
    # within; each with its covering bitmask and internal diameter
    subsets: list[tuple[int, tuple[int, ...], float]] = []
    for size in range(1, m + 1):
        for cells in combinations(range(m), size):
            mask = 0
            diam = 0.0
            for a in range(size):
                mask |= 1 << cells[a]
                row = yd_list[cells[a]]
                for b in range(a):
                    if row[cells[b]] > diam:
                        diam = row[cells[b]]
            subsets.append((mask, cells, diam))

    full_mask = (1 << m) - 1
    assigned_i: list[int] = []
    assigned_j: list[int] = []
    nodes = 0

    def search(level: int, covered: int, partial: float) -> None:
        nonlocal nodes, best_dis, best_pairs
        xi = order[level]
        last = level == n - 1
        if assigned_i:
            ia = np.asarray(assigned_i, dtype=np.intp)
            ja = np.asarray(assigned_j, dtype=np.intp)
            inc = np.abs(xd[xi, ia][None, :] - yd[:, ja]).max(axis=1).tolist()
        else:
            inc = [0.0] * m
        missing = full_mask & ~covered
        for mask, cells, sdiam in subsets:
            if last and (mask & missing) != missing:
                continue
            nodes += 1
            if nodes > budget:
                raise _Abort()
            bound = partial if partial > sdiam else sdiam
            for j in cells:
                if inc[j] > bound:
                    bound = inc[j]
            if bound >= best_dis:
                continue
            if last:
                best_dis = bound
                best_pairs = tuple(
                    zip(assigned_i + [xi] * len(cells), assigned_j + list(cells))
                )
                continue
            assigned_i.extend([xi] * len(cells))
            assigned_j.extend(cells)
            search(level + 1, covered | mask, bound)
            del assigned_i[-len(cells):]
            del assigned_j[-len(cells):]

    certified = True
    try:
        search(0, 0, 0.0)
    except _Abort:
        certified = False

    optimal = Correspondence(best_pairs)
    dist = best_dis / 2.0
    if certified:
        lower = upper = dist
    else:
        lower = gh_lower_bound(x, y)
        upper = dist
    return GHResult(dist, optimal, best_dis, lower, upper, nodes, certified)
