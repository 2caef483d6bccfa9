# File: sparse_grid/tests/test_grid.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17

import itertools

import numpy as np
from django.test import SimpleTestCase

from sparse_grid.grid import (
    ancestors,
    basis_degree,
    count_points,
    enumerate_levels,
    eval_basis_1d,
    eval_basis_tensor,
    make_basis_1d,
)
from sparse_grid.types import HierNode, MultiIndex


class MultiIndexTests(SimpleTestCase):
    """Norms and validation of multi-indices."""

    def test_norms(self):
        """norm1 is the sum, norm_inf the maximum"""
        idx = MultiIndex((3, 1, 4))
        self.assertEqual(idx.norm1, 8)
        self.assertEqual(idx.norm_inf, 4)

    def test_rejects_negative(self):
        """Negative entries are not multi-indices"""
        with self.assertRaises(ValueError):
            MultiIndex((1, -1))

    def test_node_rejects_even_index(self):
        """Hierarchical indices are odd"""
        with self.assertRaises(ValueError):
            HierNode.of((2,), (2,))

    def test_node_coordinates_are_dyadic(self):
        """x_j = i_j 2^{-l_j} exactly"""
        node = HierNode.of((4, 1), (3, 1))
        self.assertEqual(node.coordinates, (0.1875, 0.5))
        self.assertEqual(node.mesh, (0.0625, 0.5))


class EnumerateLevelsTests(SimpleTestCase):
    """Sparse-grid index set and the count identity."""

    def test_single_point_for_n1_d2(self):
        """n=1, d=2 gives only l=(1,1), i=(1,1)"""
        result = enumerate_levels(1, 2)
        self.assertEqual(len(result), 1)
        level, indices = result[0]
        self.assertEqual(level.entries, (1, 1))
        self.assertEqual([i.entries for i in indices], [(1, 1)])
        self.assertEqual(count_points(1, 2), 1)

    def test_n2_d1(self):
        """n=2, d=1 gives l=1:{1}, l=2:{1,3}"""
        result = enumerate_levels(2, 1)
        self.assertEqual([l.entries for l, _ in result], [(1,), (2,)])
        self.assertEqual([i.entries for i in result[1][1]], [(1,), (3,)])
        self.assertEqual(count_points(2, 1), 3)

    def test_count_identity(self):
        """N from enumeration equals sum of prod 2^{l_j-1}"""
        for n, d in itertools.product(range(1, 6), range(1, 4)):
            enumerated = sum(len(idx) for _, idx in enumerate_levels(n, d))
            self.assertEqual(enumerated, count_points(n, d), (n, d))

    def test_level_sum_bound(self):
        """Every level satisfies |l|_1 <= n+d-1"""
        for level, _ in enumerate_levels(4, 3):
            self.assertLessEqual(level.norm1, 4 + 3 - 1)

    def test_rejects_n_zero(self):
        """n must be at least 1"""
        with self.assertRaises(ValueError):
            enumerate_levels(0, 2)


class BasisDegreeTests(SimpleTestCase):
    """alpha = min(m, l+1)."""

    def test_examples(self):
        """Componentwise minimum"""
        self.assertEqual(basis_degree(3, MultiIndex((1, 4))).entries, (2, 3))
        self.assertEqual(basis_degree(5, MultiIndex((1, 2, 3))).entries, (2, 3, 4))
        self.assertEqual(basis_degree(2, MultiIndex((1, 7, 3))).entries, (2, 2, 2))

    def test_rejects_m_below_two(self):
        """m < 2 is rejected"""
        with self.assertRaises(ValueError):
            basis_degree(1, MultiIndex((2,)))


class AncestorTests(SimpleTestCase):
    """Neighbour and coarsening-chain ordering."""

    def test_level4_index3(self):
        """x=0.1875: neighbours 0.25, 0.125, then 0.5 and the boundary"""
        node = HierNode.of((4,), (3,))
        self.assertEqual(ancestors(node, 0, 3), [0.25, 0.125, 0.5])
        self.assertEqual(ancestors(node, 0, 5), [0.25, 0.125, 0.5, 0.0, 1.0])

    def test_level1_neighbours_are_boundary(self):
        """x=0.5 at level 1 has neighbours 1.0 and 0.0"""
        self.assertEqual(ancestors(HierNode.of((1,), (1,)), 0, 2), [1.0, 0.0])

    def test_level3_index5(self):
        """x=0.625 gives 0.75, 0.5, 1.0"""
        self.assertEqual(ancestors(HierNode.of((3,), (5,)), 0, 3), [0.75, 0.5, 1.0])

    def test_direction_selects_component(self):
        """Ancestors are taken along the requested direction"""
        node = HierNode.of((1, 3), (1, 5))
        self.assertEqual(ancestors(node, 1, 3), [0.75, 0.5, 1.0])

    def test_rejects_too_many(self):
        """count > l+1 is rejected"""
        with self.assertRaises(ValueError):
            ancestors(HierNode.of((2,), (1,)), 0, 4)

    def test_ancestors_lie_outside_open_support(self):
        """Every ancestor is a coarser grid point outside (x-h, x+h)"""
        for level in range(1, 7):
            for index in range(1, 2 ** level, 2):
                node = HierNode.of((level,), (index,))
                x, h = node.coordinates[0], node.mesh[0]
                points = ancestors(node, 0, level + 1)
                self.assertEqual(len(set(points)), level + 1)
                for p in points:
                    self.assertGreaterEqual(abs(p - x), h)


class BasisEvaluationTests(SimpleTestCase):
    """Univariate and tensor basis evaluation."""

    def test_parabola_values(self):
        """phi^2_{1,1}(0.5)=1, phi^2_{1,1}(0.25)=0.75"""
        b = make_basis_1d(1, 1, 2)
        self.assertEqual(float(eval_basis_1d(b, 0.5)), 1.0)
        self.assertEqual(float(eval_basis_1d(b, 0.25)), 0.75)

    def test_zero_outside_support(self):
        """Basis vanishes outside [x-h, x+h]"""
        b = make_basis_1d(3, 5, 3)
        x = np.array([0.0, 0.3, 0.49, 0.76, 1.0])
        self.assertTrue(np.all(eval_basis_1d(b, x) == 0.0))

    def test_lagrange_conditions(self):
        """1 at the centre, zero at the alpha stored zero-nodes"""
        for level in range(1, 6):
            for index in range(1, 2 ** level, 2):
                for degree in range(2, level + 2):
                    b = make_basis_1d(level, index, degree)
                    self.assertAlmostEqual(float(eval_basis_1d(b, b.center)), 1.0, places=12)
                    zeros = eval_basis_1d(b, np.array(b.zero_nodes))
                    self.assertLessEqual(float(np.max(np.abs(zeros))), 1e-12)

    def test_cubic_zero_nodes(self):
        """phi^3_{4,3} has zero-nodes 0.25, 0.125, 0.5"""
        b = make_basis_1d(4, 3, 3)
        self.assertEqual(b.zero_nodes, (0.25, 0.125, 0.5))

    def test_positive_inside_support(self):
        """No sign change in the open support"""
        for degree in (2, 3, 4):
            b = make_basis_1d(5, 11, degree)
            lo, hi = b.support
            x = np.linspace(lo, hi, 401)[1:-1]
            self.assertTrue(np.all(eval_basis_1d(b, x) > 0.0))

    def test_degree2_matches_closed_form(self):
        """Lagrange product equals 1-((x-c)/h)^2 for alpha=2"""
        b = make_basis_1d(3, 3, 2)
        x = np.linspace(*b.support, 57)
        closed = 1.0 - ((x - b.center) / b.h) ** 2
        np.testing.assert_allclose(eval_basis_1d(b, x), closed, atol=1e-15)

    def test_tensor_examples(self):
        """Tensor product of univariate values"""
        node = HierNode.of((1, 1), (1, 1))
        degrees = MultiIndex((2, 2))
        self.assertEqual(eval_basis_tensor(node, degrees, (0.5, 0.5)), 1.0)
        self.assertEqual(eval_basis_tensor(node, degrees, (0.25, 0.5)), 0.75)
        other = HierNode.of((3, 1), (1, 1))
        self.assertEqual(eval_basis_tensor(other, degrees, (0.9, 0.5)), 0.0)

    def test_disjoint_supports(self):
        """Supports of one level meet in at most a point"""
        for level in range(1, 6):
            intervals = [make_basis_1d(level, i, 2).support for i in range(1, 2 ** level, 2)]
            for (a0, a1), (b0, b1) in zip(intervals, intervals[1:]):
                self.assertLessEqual(max(0.0, min(a1, b1) - max(a0, b0)), 0.0)
