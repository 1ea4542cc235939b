#!/usr/bin/env python3
"""
Tests for bivariate curve polynomials: Newton polygons, discriminants and fibres
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
from django.test import SimpleTestCase

from curves.algebra import FieldSpec, UniPoly, extension_spec, field_of
from curves.curve import (
    CurvePoly,
    baker_bound,
    count_affine_points,
    discriminant_y,
    generic_discriminant,
    interpolate,
    is_delta_polynomial,
    newton_polygon,
    projective_fibre_count,
    support,
    univariate_discriminant,
)
from curves.errors import CurveError, FieldMismatchError
from curves.lattice import LatticePoint, convex_hull

F3 = FieldSpec(3)
F5 = FieldSpec(5)


def curve(field, *rows):
    return CurvePoly.from_lists(field, rows)


def random_curve(field, gamma, max_degree, rng):
    rows = []
    for i in range(gamma + 1):
        degree = int(rng.integers(0, max_degree + 1))
        if i < gamma and rng.random() < 0.2:
            rows.append(UniPoly.zero(field))
        else:
            rows.append(UniPoly.random(field, degree, rng))
    return CurvePoly(field, tuple(rows))


def evaluate_generic(terms, values, p):
    total = 0
    for mono, coeff in terms:
        term = coeff
        for v, e in zip(values, mono):
            term *= v ** e
        total += term
    return total % p


class CurvePolyTests(SimpleTestCase):

    def test_support_and_newton_polygon(self):
        # y^2 - t^3 - t
        f = curve(F3, [0, 2, 0, 2], [], [1])
        self.assertEqual(support(f), {LatticePoint(1, 0), LatticePoint(3, 0), LatticePoint(0, 2)})
        self.assertEqual(newton_polygon(f).to_json(), [[0, 2], [1, 0], [3, 0]])

    def test_newton_polygon_of_product_is_minkowski_sum(self):
        rng = np.random.default_rng(17)
        for _ in range(40):
            u = random_curve(F3, int(rng.integers(1, 3)), 3, rng)
            v = random_curve(F3, int(rng.integers(1, 3)), 3, rng)
            pu, pv = newton_polygon(u), newton_polygon(v)
            expected = convex_hull((a[0] + b[0], a[1] + b[1]) for a in pu.vertices for b in pv.vertices)
            self.assertEqual(newton_polygon(u * v), expected)

    def test_rejects_zero_leading_coefficient(self):
        with self.assertRaises(CurveError):
            CurvePoly(F3, (UniPoly.one(F3), UniPoly.zero(F3)))

    def test_rejects_mixed_fields(self):
        with self.assertRaises(FieldMismatchError):
            CurvePoly(F3, (UniPoly.one(F3), UniPoly.one(F5)))

    def test_json_round_trip(self):
        f = curve(F5, [1, 2], [0, 0, 3], [4])
        self.assertEqual(CurvePoly.from_json(F5, f.to_json()), f)

    def test_baker_bound_of_hyperelliptic_models(self):
        for g in range(1, 6):
            f0 = UniPoly.monomial(F3, 2 * g + 1) + UniPoly.monomial(F3, 1)
            f = CurvePoly(F3, (-f0, UniPoly.zero(F3), UniPoly.one(F3)))
            self.assertEqual(baker_bound(f), g)

    def test_delta_polynomial(self):
        # y^2 - t^3 - 1
        f = curve(F3, [2, 0, 0, 2], [], [1])
        self.assertTrue(is_delta_polynomial(f, newton_polygon(f)))
        # (0, 2) is an endpoint of the edge from (4, 0) to (0, 2)
        self.assertTrue(is_delta_polynomial(f, convex_hull([(0, 0), (4, 0), (0, 2)])))
        # the edge from (4, 0) to (0, 3) carries no support point
        self.assertFalse(is_delta_polynomial(f, convex_hull([(0, 0), (4, 0), (0, 3)])))
        # support outside the polygon
        self.assertFalse(is_delta_polynomial(f, convex_hull([(0, 0), (2, 0), (0, 2)])))


class DiscriminantTests(SimpleTestCase):

    def test_quadratic_discriminant(self):
        # y^2 + t y + 1: disc = t^2 - 4
        f = curve(F5, [1], [0, 1], [1])
        self.assertEqual(discriminant_y(f), UniPoly(F5, [1, 0, 1]))

    def test_cubic_discriminant_formula(self):
        # y^3 + a y + b: disc = -4 a^3 - 27 b^2
        a, b = UniPoly(F5, [1, 1]), UniPoly(F5, [0, 2])
        f = CurvePoly(F5, (b, a, UniPoly.zero(F5), UniPoly.one(F5)))
        expected = (a ** 3).scale(field_of(F5).scalar(-4)) + (b ** 2).scale(field_of(F5).scalar(-27))
        self.assertEqual(discriminant_y(f), expected)

    def test_discriminant_of_product_of_linear_factors(self):
        # disc((y - a)(y - b)) = (a - b)^2
        rng = np.random.default_rng(23)
        one = UniPoly.one(F5)
        for _ in range(20):
            a = UniPoly.random(F5, int(rng.integers(0, 4)), rng)
            b = UniPoly.random(F5, int(rng.integers(0, 4)), rng)
            product = CurvePoly(F5, (-a, one)) * CurvePoly(F5, (-b, one))
            self.assertEqual(discriminant_y(product), (a - b) ** 2)

    def test_discriminant_is_multiplicative(self):
        # disc(u (y - b)) = disc(u) Res(u, y - b)^2 with Res(u, y - b) = +-u(t, b(t))
        rng = np.random.default_rng(29)
        for _ in range(20):
            u = random_curve(F3, 2, 3, rng)
            b = UniPoly.random(F3, int(rng.integers(0, 3)), rng)
            u_at_b = u.f[0] + u.f[1] * b + u.f[2] * b * b
            product = u * CurvePoly(F3, (-b, UniPoly.one(F3)))
            self.assertEqual(discriminant_y(product), discriminant_y(u) * u_at_b * u_at_b)

    def test_repeated_factor_gives_zero(self):
        # (y - t)^2
        f = curve(F5, [0, 0, 1], [0, 3], [1])
        self.assertTrue(discriminant_y(f).is_zero())

    def test_sylvester_agrees_with_interpolation(self):
        rng = np.random.default_rng(11)
        for n in range(200):
            field = F3 if n % 2 else F5
            gamma = 2 + n % 3
            f = random_curve(field, gamma, 4, rng)
            self.assertEqual(discriminant_y(f, 'sylvester'), discriminant_y(f, 'interpolation'), f.to_json())

    def test_unknown_method(self):
        with self.assertRaises(CurveError):
            discriminant_y(curve(F3, [1], [1], [1]), 'fft')

    def test_generic_discriminant_of_quadratic(self):
        # a_1^2 - 4 a_0 a_2
        self.assertEqual(dict(generic_discriminant(2)), {(0, 2, 0): 1, (1, 0, 1): -4})

    def test_generic_discriminant_matches_field_discriminant(self):
        rng = np.random.default_rng(5)
        for gamma in (2, 3, 4):
            terms = generic_discriminant(gamma)
            for _ in range(30):
                values = rng.integers(0, 5, size=gamma + 1).tolist()
                values[-1] = int(rng.integers(1, 5))
                self.assertEqual(evaluate_generic(terms, values, 5), univariate_discriminant(values, F5))

    def test_interpolate(self):
        target = UniPoly(F5, [3, 0, 1, 4])
        xs = [0, 1, 2, 4]
        self.assertEqual(interpolate(xs, [target.evaluate(x) for x in xs], F5), target)


class FibreTests(SimpleTestCase):

    def test_fibre_counts(self):
        # y^2 - t over F_5: t = 0 ramifies, squares split, non-squares are inert
        f = curve(F5, [0, 4], [], [1])
        self.assertEqual(projective_fibre_count(f, 0), 1)
        self.assertEqual(projective_fibre_count(f, 1), 2)
        self.assertEqual(projective_fibre_count(f, 2), 0)

    def test_point_at_infinity_when_leading_coefficient_vanishes(self):
        # t y^2 + y: above t = 0 the fibre is y = 0 and [1:0]
        f = curve(F5, [], [1], [0, 1])
        self.assertEqual(projective_fibre_count(f, 0), 2)

    def test_zero_fibre_sentinel(self):
        # t y^2 + t vanishes identically above t = 0
        f = curve(F5, [0, 1], [], [0, 1])
        self.assertEqual(projective_fibre_count(f, 0), 3)

    def test_fibres_in_extension(self):
        ext = extension_spec(F5, 2)
        f = curve(F5, [0, 4], [], [1])
        # every element of F_5 is a square in F_25
        for a in range(1, 5):
            self.assertEqual(projective_fibre_count(f, a, ext), 2)

    def test_elliptic_affine_counts(self):
        # y^2 = t^3 - t over F_5 has 7 affine points
        f = curve(F5, [0, 1, 0, 4], [], [1])
        self.assertEqual(count_affine_points(f, 1), 7)


if __name__ == '__main__':
    unittest.main()
