#!/usr/bin/env python3
"""
Tests for finite fields, their towers and polynomials over them
"""
import itertools
import os
import pickle
import sys
import unittest

import django

# Setup Django
sys.path.append(os.path.dirname(os.path.abspath(__file__)))
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'gonal.settings')
django.setup()

import numpy as np
from django.test import SimpleTestCase, override_settings

from curves.algebra import (
    INF,
    NEG_INF,
    FieldSpec,
    FqElem,
    UniPoly,
    check_enumeration,
    count_distinct_roots,
    extension_spec,
    field_of,
    find_irreducible,
    fq_arith,
    is_irreducible,
    is_squarefree,
    poly_arith,
    poly_gcd,
    roots_in_field,
    valuation_at,
)
from curves.errors import (
    CapExceededError,
    CurveError,
    FieldMismatchError,
    InexactDivisionError,
    ReducibleModulusError,
    ZeroDivisionFieldError,
)

F2 = FieldSpec(2)
F3 = FieldSpec(3)
F5 = FieldSpec(5)


def poly(field, *coeffs):
    return UniPoly(field, coeffs)


def monic_polys(field, degree):
    q = field.cardinality
    for low in itertools.product(range(q), repeat=degree):
        yield UniPoly(field, list(low) + [1])


def squarefree_by_trial_division(a):
    """No monic p of positive degree with p^2 | a"""
    for d in range(1, int(a.degree) // 2 + 1):
        for p in monic_polys(a.field, d):
            if (a % (p * p)).is_zero():
                return False
    return True


class FieldSpecTests(SimpleTestCase):

    def test_rejects_composite_characteristic(self):
        with self.assertRaises(ReducibleModulusError):
            FieldSpec(4)

    def test_create_picks_irreducible_modulus(self):
        spec = FieldSpec.create(3, 2)
        self.assertEqual(spec.cardinality, 9)
        self.assertTrue(is_irreducible(UniPoly(F3, spec.modulus)))

    def test_create_rejects_reducible_modulus(self):
        # t^2 - 1 = (t - 1)(t + 1)
        with self.assertRaises(ReducibleModulusError):
            FieldSpec.create(3, 2, (2, 0, 1))

    def test_json_round_trip_of_tower(self):
        ext = extension_spec(F3, 2)
        self.assertEqual(FieldSpec.from_json(ext.to_json()), ext)
        self.assertEqual(ext.base, F3)
        self.assertEqual(ext.e, 2)

    def test_contains(self):
        ext = extension_spec(F3, 3)
        self.assertTrue(ext.contains(F3))
        self.assertFalse(F3.contains(ext))
        self.assertFalse(ext.contains(F5))


class FieldArithmeticTests(SimpleTestCase):

    def test_prime_field_inverses(self):
        F = field_of(F5)
        for a in range(1, 5):
            self.assertEqual(F.mul(a, F.inv(a)), 1)

    def test_division_by_zero(self):
        with self.assertRaises(ZeroDivisionFieldError):
            field_of(F5).inv(0)

    def test_extension_tables_match_polynomial_arithmetic(self):
        for spec in (FieldSpec.create(3, 2), FieldSpec.create(2, 3), extension_spec(F3, 2)):
            F = field_of(spec)
            self.assertIsNotNone(F.tables)
            for a in range(spec.cardinality):
                for b in range(spec.cardinality):
                    self.assertEqual(F.mul(a, b), F._slow_mul(a, b))

    def test_every_nonzero_element_is_invertible(self):
        spec = FieldSpec.create(2, 4)
        F = field_of(spec)
        for a in range(1, spec.cardinality):
            self.assertEqual(F.mul(a, F.inv(a)), 1)
            self.assertEqual(F.power(a, spec.cardinality - 1), 1)

    def test_addition_is_digitwise(self):
        spec = FieldSpec.create(3, 2)
        F = field_of(spec)
        # (1 + 2u) + (2 + 2u) = 0 + u
        self.assertEqual(F.add(1 + 2 * 3, 2 + 2 * 3), 0 + 1 * 3)
        self.assertEqual(F.add(4, F.neg(4)), 0)

    def test_vector_ops_agree_with_scalar_ops(self):
        spec = FieldSpec.create(5, 2)
        F = field_of(spec)
        xs = F.elements()
        ys = (xs * 7 + 3) % spec.cardinality
        np.testing.assert_array_equal(F.vmul(xs, ys), [F.mul(int(a), int(b)) for a, b in zip(xs, ys)])
        np.testing.assert_array_equal(F.vadd(xs, ys), [F.add(int(a), int(b)) for a, b in zip(xs, ys)])
        np.testing.assert_array_equal(F.vinv(xs)[1:], [F.inv(int(a)) for a in xs[1:]])
        self.assertEqual(int(F.vinv(xs)[0]), 0)

    def test_squares_are_half_the_units_in_odd_characteristic(self):
        spec = FieldSpec.create(3, 2)
        F = field_of(spec)
        squares = F.vis_square(F.elements())
        self.assertEqual(int(squares.sum()), 1 + (spec.cardinality - 1) // 2)

    def test_trace_to_f2(self):
        spec = FieldSpec.create(2, 2)
        traces = field_of(spec).vtrace_f2(field_of(spec).elements())
        self.assertEqual(sorted(traces.tolist()), [0, 0, 1, 1])

    def test_fq_elements(self):
        spec = FieldSpec.create(3, 2)
        a, b = FqElem(spec, 4), FqElem(spec, 7)
        self.assertEqual((a * b) / b, a)
        self.assertEqual((a + b) - b, a)
        self.assertEqual(a ** (spec.cardinality - 1), FqElem(spec, 1))
        self.assertEqual(FqElem.from_coeffs(spec, a.coeffs), a)
        self.assertEqual(fq_arith(a, b, 'add'), a + b)

    def test_mixing_fields_is_rejected(self):
        with self.assertRaises(FieldMismatchError):
            FqElem(F3, 1) + FqElem(F5, 1)
        with self.assertRaises(FieldMismatchError):
            poly(F3, 1, 1) + poly(F5, 1, 1)

    def test_code_out_of_range(self):
        with self.assertRaises(CurveError):
            FqElem(F3, 3)


class UniPolyTests(SimpleTestCase):

    def test_zero_polynomial(self):
        zero = UniPoly.zero(F3)
        self.assertEqual(zero.degree, NEG_INF)
        self.assertTrue(zero.is_zero())
        self.assertEqual(poly(F3, 1, 2, 0, 0).degree, 1)

    def test_division_identity(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            a = UniPoly.random(F5, int(rng.integers(0, 9)), rng)
            b = UniPoly.random(F5, int(rng.integers(0, 5)), rng)
            quot, rem = divmod(a, b)
            self.assertEqual(quot * b + rem, a)
            self.assertLess(rem.degree, b.degree)

    def test_division_over_prime_power_field(self):
        F9 = FieldSpec.create(3, 2)
        rng = np.random.default_rng(9)
        for _ in range(30):
            a = UniPoly.random(F9, int(rng.integers(0, 7)), rng)
            b = UniPoly.random(F9, int(rng.integers(1, 4)), rng)
            quot, rem = divmod(a, b)
            self.assertEqual(quot * b + rem, a)
            self.assertLess(rem.degree, b.degree)
        common = UniPoly(F9, [4, 1])
        g = poly_gcd(common * UniPoly(F9, [2, 7, 1]), common.scale(5) * UniPoly(F9, [1, 1]))
        self.assertEqual(g.leading, 1)
        self.assertTrue((g % common).is_zero())

    def test_exact_division(self):
        a = poly(F3, 1, 0, 1)
        self.assertEqual((a * a).exact_div(a), a)
        with self.assertRaises(InexactDivisionError):
            (a * a + UniPoly.one(F3)).exact_div(a)

    def test_division_by_zero(self):
        with self.assertRaises(ZeroDivisionFieldError):
            divmod(poly(F3, 1, 1), UniPoly.zero(F3))

    def test_gcd_is_monic(self):
        common = poly(F5, 1, 1)
        a = common * poly(F5, 2, 3)
        b = common.scale(3) * poly(F5, 2, 0, 1)
        self.assertEqual(poly_gcd(a, b), common)
        self.assertEqual(poly_arith(a, b, 'gcd'), common)
        with self.assertRaises(ZeroDivisionFieldError):
            poly_gcd(UniPoly.zero(F5), UniPoly.zero(F5))

    def test_derivative_in_characteristic_p(self):
        # d/dt t^3 = 3 t^2 = 0 over F_3
        self.assertTrue(UniPoly.monomial(F3, 3).derivative().is_zero())
        self.assertEqual(poly(F5, 1, 1, 1).derivative(), poly(F5, 1, 2))

    def test_random_has_exact_degree(self):
        rng = np.random.default_rng(0)
        for d in range(6):
            self.assertEqual(UniPoly.random(F3, d, rng).degree, d)

    def test_lift_and_evaluate_in_extension(self):
        ext = extension_spec(F3, 2)
        a = poly(F3, 1, 0, 1)
        self.assertEqual(roots_in_field(a), frozenset())
        self.assertEqual(len(roots_in_field(a.lift(ext))), 2)
        for x in range(ext.cardinality):
            self.assertEqual(a.evaluate(x, ext), a.lift(ext).evaluate(x))
        np.testing.assert_array_equal(
            a.evaluate_many(np.arange(ext.cardinality), ext),
            [a.evaluate(x, ext) for x in range(ext.cardinality)],
        )

    def test_pow_mod(self):
        m = poly(F3, 1, 0, 1)
        t = UniPoly.monomial(F3, 1)
        self.assertEqual(t.pow_mod(9, m), (t ** 9) % m)

    def test_text_form(self):
        a = poly(F5, 1, 0, 4)
        self.assertEqual(a.to_text(), "[1,0,4]")
        self.assertEqual(UniPoly.from_text(F5, "[1,0,4]"), a)
        with self.assertRaises(CurveError):
            UniPoly.from_text(F5, '{"a": 1}')

    def test_pickles(self):
        a = poly(F5, 1, 2, 3)
        self.assertEqual(pickle.loads(pickle.dumps(a)), a)

    def test_immutable(self):
        with self.assertRaises(AttributeError):
            poly(F3, 1).coeffs = (2,)


class FactorizationTests(SimpleTestCase):

    def test_irreducible_counts(self):
        # monic irreducibles: 3 quadratics over F_3, 2 cubics and 3 quartics over F_2
        self.assertEqual(sum(is_irreducible(a) for a in monic_polys(F3, 2)), 3)
        self.assertEqual(sum(is_irreducible(a) for a in monic_polys(F2, 3)), 2)
        self.assertEqual(sum(is_irreducible(a) for a in monic_polys(F2, 4)), 3)

    def test_irreducibility_of_constant(self):
        with self.assertRaises(CurveError):
            is_irreducible(UniPoly.one(F3))

    def test_find_irreducible(self):
        self.assertEqual(find_irreducible(F3, 2).coeffs, (1, 0, 1))
        self.assertEqual(find_irreducible(F5, 2).coeffs, (1, 1, 1))
        self.assertEqual(find_irreducible(F2, 2).coeffs, (1, 1, 1))

    def test_squarefree_agrees_with_trial_division(self):
        for field in (F2, F3):
            for degree in range(1, 7):
                for a in monic_polys(field, degree):
                    self.assertEqual(is_squarefree(a), squarefree_by_trial_division(a), a)

    def test_squarefree_of_zero(self):
        with self.assertRaises(CurveError):
            is_squarefree(UniPoly.zero(F3))

    def test_valuation(self):
        t_minus_1 = poly(F3, 2, 1)
        a = (t_minus_1 ** 3) * poly(F3, 1, 1)
        self.assertEqual(valuation_at(a, t_minus_1), 3)
        self.assertEqual(valuation_at(a, poly(F3, 0, 1)), 0)
        self.assertEqual(valuation_at(UniPoly.zero(F3), t_minus_1), INF)

    def test_valuation_is_additive(self):
        rng = np.random.default_rng(5)
        primes = [poly(F3, 0, 1), poly(F3, 2, 1), poly(F3, 1, 0, 1)]
        for _ in range(30):
            p = primes[int(rng.integers(len(primes)))]
            a = (p ** int(rng.integers(0, 3))) * UniPoly.random(F3, int(rng.integers(0, 5)), rng)
            b = (p ** int(rng.integers(0, 3))) * UniPoly.random(F3, int(rng.integers(0, 5)), rng)
            self.assertEqual(valuation_at(a * b, p), valuation_at(a, p) + valuation_at(b, p))

    def test_valuation_at_a_unit(self):
        with self.assertRaises(CurveError):
            valuation_at(poly(F3, 1, 1), UniPoly.one(F3))
        with self.assertRaises(CurveError):
            valuation_at(poly(F3, 1, 1), UniPoly.zero(F3))

    @override_settings(GONAL_DEBUG_CHECKS=True)
    def test_valuation_at_reducible_polynomial_in_debug_mode(self):
        with self.assertRaises(ReducibleModulusError):
            valuation_at(poly(F3, 1), poly(F3, 2, 0, 1))

    def test_roots(self):
        self.assertEqual(roots_in_field(poly(F5, 1, 0, 1)), frozenset({2, 3}))
        with self.assertRaises(CurveError):
            roots_in_field(UniPoly.zero(F5))

    def test_distinct_roots(self):
        cubic = UniPoly.monomial(F3, 3) - UniPoly.monomial(F3, 1)
        self.assertEqual(count_distinct_roots(cubic), 3)
        self.assertEqual(count_distinct_roots((poly(F3, 2, 1) ** 2) * poly(F3, 1, 0, 1)), 1)
        self.assertEqual(count_distinct_roots(UniPoly.one(F3)), 0)

    @override_settings(GONAL_ENUMERATION_CAP=100)
    def test_enumeration_cap(self):
        check_enumeration(100, "small")
        with self.assertRaises(CapExceededError) as ctx:
            check_enumeration(101, "large")
        self.assertEqual(ctx.exception.exit_code, 4)


class ExtensionTests(SimpleTestCase):

    def test_frobenius_fixes_every_element(self):
        for k in (1, 2, 3):
            ext = extension_spec(F3, k)
            F = field_of(ext)
            xs = F.elements()[1:]
            np.testing.assert_array_equal(F.vpower(xs, ext.cardinality), xs)
        F9 = FieldSpec.create(3, 2)
        for x in range(1, 9):
            self.assertEqual(field_of(F9).power(x, 9), x)

    def test_extensions_are_deterministic(self):
        self.assertIs(extension_spec(F3, 1), F3)
        self.assertEqual(find_irreducible(F5, 1), UniPoly.monomial(F5, 1))
        self.assertEqual(extension_spec.__wrapped__(F3, 2), extension_spec.__wrapped__(F3, 2))
        self.assertEqual(extension_spec(F3, 2).modulus, find_irreducible(F3, 2).coeffs)
        self.assertEqual(find_irreducible(F3, 3), find_irreducible(F3, 3))


if __name__ == '__main__':
    unittest.main()
