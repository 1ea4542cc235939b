#!/usr/bin/env python3
"""
Tests for lattice polygons and the target polygons Delta_r
"""
import os
import sys
import unittest

import django

# Setup Django
sys.path.append(os.path.dirname(os.path.abspath(__file__)))
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'gonal.settings')
django.setup()

import numpy as np
from django.test import SimpleTestCase, override_settings

from curves.construct import RightProfile, interior_identity
from curves.errors import CurveError, DegeneratePolygonError
from curves.lattice import (
    LatticePoint,
    LatticePolygon,
    contains_point,
    convex_hull,
    delta_r,
    edge_lattice_count,
    interior_points,
    lattice_counts,
    row_scan_counts,
)


def hull(*points):
    return convex_hull(LatticePoint(x, y) for x, y in points)


class ConvexHullTests(SimpleTestCase):

    def test_canonical_vertex_order(self):
        square = hull((2, 2), (0, 0), (0, 2), (2, 0), (1, 1), (1, 0))
        self.assertEqual(square.to_json(), [[0, 0], [2, 0], [2, 2], [0, 2]])

    def test_same_polygon_from_any_point_order(self):
        points = [(0, 0), (4, 0), (3, 2), (0, 3), (1, 1)]
        self.assertEqual(hull(*points), hull(*reversed(points)))

    def test_degenerate_hulls(self):
        self.assertEqual(hull((1, 1)).dimension, 0)
        segment = hull((0, 0), (1, 1), (3, 3))
        self.assertEqual(segment.dimension, 1)
        self.assertEqual(segment.to_json(), [[0, 0], [3, 3]])
        with self.assertRaises(CurveError):
            convex_hull([])

    def test_json_round_trip(self):
        polygon = hull((0, 0), (5, 0), (5, 1), (4, 2), (0, 2))
        self.assertEqual(LatticePolygon.from_json(polygon.to_json()), polygon)

    def test_containment_is_closed(self):
        triangle = hull((0, 0), (4, 0), (0, 4))
        self.assertIn((2, 2), triangle)
        self.assertIn((0, 0), triangle)
        self.assertNotIn((3, 2), triangle)
        self.assertTrue(contains_point(hull((0, 0), (2, 2)), LatticePoint(1, 1)))


class LatticeCountTests(SimpleTestCase):

    def test_edge_count(self):
        self.assertEqual(edge_lattice_count(LatticePoint(0, 0), LatticePoint(6, 4)), 3)
        with self.assertRaises(DegeneratePolygonError):
            edge_lattice_count(LatticePoint(1, 1), LatticePoint(1, 1))

    def test_pick_on_small_polygons(self):
        self.assertEqual(lattice_counts(hull((0, 0), (2, 0), (2, 2), (0, 2))), (1, 8))
        self.assertEqual(lattice_counts(hull((0, 0), (1, 0), (0, 1))), (0, 3))
        self.assertEqual(lattice_counts(hull((0, 0), (4, 0), (0, 4))), (3, 12))

    def test_degenerate_polygon_has_no_counts(self):
        with self.assertRaises(DegeneratePolygonError):
            lattice_counts(hull((0, 0), (3, 0)))
        with self.assertRaises(DegeneratePolygonError):
            row_scan_counts(hull((2, 5)))

    def test_pick_agrees_with_row_scan(self):
        rng = np.random.default_rng(2024)
        checked = 0
        while checked < 500:
            n = int(rng.integers(3, 9))
            points = rng.integers(-12, 13, size=(n, 2)).tolist()
            polygon = convex_hull(points)
            if polygon.is_degenerate:
                continue
            self.assertEqual(lattice_counts(polygon), row_scan_counts(polygon), polygon.to_json())
            interior = lattice_counts(polygon)[0]
            self.assertEqual(len(list(interior_points(polygon))), interior)
            checked += 1

    @override_settings(GONAL_DEBUG_CHECKS=True)
    def test_debug_mode_cross_checks(self):
        self.assertEqual(lattice_counts(hull((0, 0), (7, 0), (3, 5))), row_scan_counts(hull((0, 0), (7, 0), (3, 5))))


class DeltaRTests(SimpleTestCase):

    def test_gamma_two(self):
        polygon = delta_r(2, RightProfile.from_kp((1, 0), 9))
        self.assertEqual(polygon.to_json(), [[0, 0], [10, 0], [10, 1], [9, 2], [0, 2]])
        self.assertEqual(lattice_counts(polygon)[0], 9)

    def test_gamma_three(self):
        polygon = delta_r(3, RightProfile.from_kp((2, 1, 0), 14))
        self.assertEqual(polygon.to_json(), [[0, 0], [17, 0], [17, 1], [16, 2], [14, 3], [0, 3]])
        self.assertEqual(lattice_counts(polygon)[0], 31)

    def test_interior_grows_by_gamma_minus_one(self):
        cases = [(2, (1, 0)), (3, (2, 1, 0)), (3, (3, 2, 0)), (4, (4, 3, 1, 0)), (5, (5, 4, 2, 1, 0))]
        for gamma, kp in cases:
            previous = None
            for r in range(1, 15):
                right = RightProfile.from_kp(kp, r)
                interior = lattice_counts(delta_r(gamma, right))[0]
                self.assertEqual(interior, interior_identity(gamma, right))
                if previous is not None:
                    self.assertEqual(interior - previous, gamma - 1)
                previous = interior

    def test_rejects_nonpositive_r(self):
        with self.assertRaises(DegeneratePolygonError):
            delta_r(2, RightProfile.from_kp((1, 0), 0))


if __name__ == '__main__':
    unittest.main()
