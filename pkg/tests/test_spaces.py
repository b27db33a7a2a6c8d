"""Metric-core: validation, Hausdorff distances, nets, quotients, isometry."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ghkit import (
    diameter,
    directed_distance,
    epsilon_net,
    gh_brute,
    hausdorff,
    is_isometric,
    project_net,
    quotient_zero_classes,
    restrict,
    validate_metric,
    validate_semi_metric,
)
from ghkit.errors import (
    AsymmetricError,
    EmptySubsetError,
    MetricValidationError,
    NegativeEntryError,
    NonzeroDiagonalError,
    NotANetError,
    TriangleViolationError,
    ZeroOffDiagonalError,
)

from conftest import grid_space, line_space, shuffled_copy, two_point_space


def axioms_hold(m) -> bool:
    """Independent pure-python check of all five metric axioms."""
    n = len(m)
    for i in range(n):
        if m[i][i] != 0:
            return False
        for j in range(n):
            if m[i][j] < 0 or m[i][j] != m[j][i]:
                return False
            if i != j and m[i][j] == 0:
                return False
            for k in range(n):
                if m[i][j] > m[i][k] + m[k][j]:
                    return False
    return True


class TestValidateMetric:
    def test_smallest_nondegenerate_space(self):
        space = validate_metric([[0, 1], [1, 0]], ["a", "b"])
        assert space.n == 2
        assert space.dist[0, 1] == 1.0

    def test_nonzero_diagonal_witness(self):
        with pytest.raises(NonzeroDiagonalError) as err:
            validate_metric([[0, 3], [3, 0.5]], ["a", "b"])
        assert err.value.details["i"] == 1

    def test_triangle_violation_witness(self):
        with pytest.raises(TriangleViolationError) as err:
            validate_metric([[0, 1, 5], [1, 0, 1], [5, 1, 0]], ["a", "b", "c"])
        d = err.value.details
        assert (d["i"], d["j"], d["k"]) == (0, 2, 1)

    def test_negative_entry(self):
        with pytest.raises(NegativeEntryError):
            validate_metric([[0, -1], [-1, 0]], ["a", "b"])

    def test_asymmetric(self):
        with pytest.raises(AsymmetricError) as err:
            validate_metric([[0, 1, 2], [1, 0, 1], [2.5, 1, 0]], ["a", "b", "c"])
        d = err.value.details
        assert {d["i"], d["j"]} == {0, 2}

    def test_zero_off_diagonal(self):
        with pytest.raises(ZeroOffDiagonalError) as err:
            validate_metric([[0, 0], [0, 0]], ["a", "b"])
        assert (err.value.details["i"], err.value.details["j"]) == (0, 1)

    def test_shape_and_labels_preconditions(self):
        with pytest.raises(ValueError):
            validate_metric([[0, 1]], ["a"])
        with pytest.raises(ValueError):
            validate_metric([[0, 1], [1, 0]], ["a"])
        with pytest.raises(ValueError):
            validate_metric([[0, 1], [1, 0]], ["a", "a"])
        with pytest.raises(ValueError):
            validate_metric(np.zeros((0, 0)), [])

    @given(seed=st.integers(0, 10**9))
    @settings(max_examples=150, deadline=None)
    def test_accepts_iff_axioms_hold(self, seed):
        """Fuzz valid matrices with random single-entry perturbations and
        compare against the independent axiom checker."""
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 6))
        m = np.array(grid_space(rng, n).dist)
        if rng.random() < 0.85:
            i, j = rng.integers(n, size=2)
            m[i, j] = float(rng.choice([-0.5, 0.0, 0.25, 4.75, 10.0]))
        ok = axioms_hold(m.tolist())
        if ok:
            validate_metric(m, [f"p{i}" for i in range(n)])
        else:
            with pytest.raises(MetricValidationError):
                validate_metric(m, [f"p{i}" for i in range(n)])


class TestDiameter:
    def test_one_point(self):
        assert diameter(validate_metric([[0]], ["a"])) == 0.0

    def test_two_point(self):
        assert diameter(two_point_space(4.0)) == 4.0

    def test_three_point_max_scan(self):
        matrix = [[0, 1, 2], [1, 0, 1.5], [2, 1.5, 0]]
        expected = max(v for row in matrix for v in row)
        assert diameter(validate_metric(matrix, ["a", "b", "c"])) == expected == 2.0


class TestDirectedAndHausdorff:
    def test_equal_subsets_are_at_zero(self, rng):
        x = grid_space(rng, 5)
        a = [0, 2, 4]
        assert directed_distance(x, a, a) == 0.0
        assert hausdorff(x, a, a) == 0.0

    def test_line_enumeration(self):
        x = line_space([0, 1, 2])

        def oracle(dist, a, b):
            return max(min(dist[bb][aa] for aa in a) for bb in b)

        d = x.dist.tolist()
        assert directed_distance(x, [0], [1, 2]) == oracle(d, [0], [1, 2]) == 2.0
        assert directed_distance(x, [1, 2], [0]) == oracle(d, [1, 2], [0]) == 1.0
        assert hausdorff(x, [0], [2]) == 2.0
        assert hausdorff(x, [0], [1, 2]) == 2.0

    def test_empty_subset_rejected(self):
        x = line_space([0, 1])
        with pytest.raises(EmptySubsetError):
            directed_distance(x, [], [0])
        with pytest.raises(EmptySubsetError):
            hausdorff(x, [0], [])

    @given(seed=st.integers(0, 10**9))
    @settings(max_examples=100, deadline=None)
    def test_metric_on_subsets(self, seed):
        rng = np.random.default_rng(seed)
        x = grid_space(rng, int(rng.integers(3, 8)))
        subsets = []
        for _ in range(3):
            size = int(rng.integers(1, x.n + 1))
            subsets.append(sorted(rng.choice(x.n, size=size, replace=False).tolist()))
        a, b, c = subsets
        assert hausdorff(x, a, b) == hausdorff(x, b, a)
        assert hausdorff(x, a, c) <= hausdorff(x, a, b) + hausdorff(x, b, c) + 1e-12


class TestEpsilonNet:
    def test_large_epsilon_gives_seed_only(self, rng):
        x = grid_space(rng, 6)
        report = epsilon_net(x, x.diameter() + 1.0)
        assert report.net == (0,)

    def test_greedy_on_the_line(self):
        x = line_space([0, 1, 2, 3])
        report = epsilon_net(x, 1.5)
        assert report.net == (0, 3)
        assert report.radius == 1.0

    def test_tiny_epsilon_takes_every_point(self, rng):
        x = grid_space(rng, 5)
        positive = x.dist[x.dist > 0]
        report = epsilon_net(x, float(positive.min()) / 2.0)
        assert report.net == tuple(range(5))
        assert report.radius == 0.0

    def test_epsilon_must_be_positive(self, rng):
        with pytest.raises(ValueError):
            epsilon_net(grid_space(rng, 3), 0.0)

    @given(seed=st.integers(0, 10**9))
    @settings(max_examples=100, deadline=None)
    def test_every_point_strictly_covered(self, seed):
        rng = np.random.default_rng(seed)
        x = grid_space(rng, int(rng.integers(2, 9)))
        eps = float(rng.choice([0.5, 1.0, 1.75, 3.0, 6.0]))
        report = epsilon_net(x, eps)
        cover = x.dist[:, list(report.net)].min(axis=1)
        assert report.radius < eps
        assert (cover < eps).all()
        assert float(cover.max()) == report.radius


class TestProjectNet:
    def test_projecting_into_the_whole_space(self, rng):
        x = grid_space(rng, 7)
        eps = 2.0
        s = epsilon_net(x, eps)
        out = project_net(x, s.net, range(x.n), eps)
        assert out.size <= s.size
        assert out.radius < 2 * eps

    def test_line_projection_by_hand(self):
        x = line_space([0, 1, 2, 3, 4])
        out = project_net(x, [0, 2, 4], [1, 3], 1.5)
        assert out.net == (1, 3)
        assert out.epsilon == 3.0
        assert out.size == 2 <= 3

    def test_singleton_target(self, rng):
        x = grid_space(rng, 5)
        eps = x.diameter() + 1.0
        s = epsilon_net(x, eps)
        out = project_net(x, s.net, [3], eps)
        assert out.net == (3,)

    def test_rejects_non_net(self):
        x = line_space([0, 1, 2, 3, 4])
        with pytest.raises(NotANetError) as err:
            project_net(x, [0], [1, 2], 1.5)
        assert err.value.details["witness"] == 2

    @given(seed=st.integers(0, 10**9))
    @settings(max_examples=100, deadline=None)
    def test_doubled_radius_covers_the_subset(self, seed):
        rng = np.random.default_rng(seed)
        x = grid_space(rng, int(rng.integers(2, 9)))
        eps = float(rng.choice([0.75, 1.5, 2.5, 4.0]))
        s = epsilon_net(x, eps)
        size = int(rng.integers(1, x.n + 1))
        y = sorted(rng.choice(x.n, size=size, replace=False).tolist())
        out = project_net(x, s.net, y, eps)
        assert out.size <= s.size
        assert set(out.net) <= set(y)
        worst = x.dist[np.ix_(y, list(out.net))].min(axis=1).max()
        assert worst < 2 * eps


class TestQuotient:
    def test_metric_input_is_untouched(self, rng):
        x = grid_space(rng, 5)
        q = quotient_zero_classes(validate_semi_metric(x.dist), x.labels)
        assert q.labels == x.labels
        assert np.array_equal(q.dist, x.dist)

    def test_all_zero_matrix_collapses(self):
        q = quotient_zero_classes(validate_semi_metric(np.zeros((2, 2))), ["b", "a"])
        assert q.n == 1
        assert q.labels == ("a",)

    def test_merges_classes_and_keeps_least_label(self):
        m = validate_semi_metric([[0, 0, 2], [0, 0, 2], [2, 2, 0]])
        q = quotient_zero_classes(m, ["z", "a", "c"])
        assert q.n == 2
        assert q.labels == ("a", "c")
        assert q.dist[0, 1] == 2.0

    @given(seed=st.integers(0, 10**9))
    @settings(max_examples=75, deadline=None)
    def test_idempotent_and_valid(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 7))
        base = grid_space(rng, n)
        # collapse a random subset of points onto point 0
        merge = rng.random(n) < 0.4
        merge[0] = True
        idx = np.where(merge, 0, np.arange(n))
        semi = validate_semi_metric(base.dist[np.ix_(idx, idx)])
        labels = [f"p{i}" for i in range(n)]
        q = quotient_zero_classes(semi, labels)
        validate_metric(q.dist, q.labels)
        q2 = quotient_zero_classes(validate_semi_metric(q.dist), q.labels)
        assert q2.labels == q.labels
        assert np.array_equal(q2.dist, q.dist)


class TestIsIsometric:
    def test_identity(self, rng):
        x = grid_space(rng, 5)
        result = is_isometric(x, x)
        assert result.isometric
        assert result.mapping == tuple(range(5))

    def test_distance_multiset_mismatch(self):
        assert not is_isometric(two_point_space(2.0), two_point_space(4.0))

    def test_size_mismatch_is_refutation_not_error(self, rng):
        result = is_isometric(grid_space(rng, 3), grid_space(rng, 4))
        assert not result.isometric and result.mapping is None

    def test_reversal_of_a_line(self):
        x = line_space([0, 1, 3])
        y = line_space([0, 2, 3])
        result = is_isometric(x, y)
        assert result.isometric
        assert result.mapping == (2, 1, 0)

    def test_witness_preserves_all_distances(self, rng):
        x = grid_space(rng, 6)
        y, _ = shuffled_copy(rng, x)
        result = is_isometric(x, y)
        assert result.isometric
        p = list(result.mapping)
        assert np.array_equal(x.dist, y.dist[np.ix_(p, p)])

    def test_agrees_with_zero_distance(self, rng):
        for _ in range(40):
            n = int(rng.integers(2, 5))
            x = grid_space(rng, n)
            if rng.random() < 0.5:
                y, _ = shuffled_copy(rng, x)
            else:
                y = grid_space(rng, int(rng.integers(2, 5)), prefix="q")
            same = bool(is_isometric(x, y))
            zero = x.n == y.n and gh_brute(x, y).distance == 0.0
            assert same == zero


class TestRestrict:
    def test_submatrix(self, rng):
        x = grid_space(rng, 6)
        sub = restrict(x, [4, 1])
        assert sub.labels == (x.labels[1], x.labels[4])
        assert sub.dist[0, 1] == x.dist[1, 4]

    def test_empty_rejected(self, rng):
        with pytest.raises(EmptySubsetError):
            restrict(grid_space(rng, 3), [])
