from fractions import Fraction
from unittest import TestCase

import numpy as np

from lattice_invariants.gram_lattice import LatticeError, embed, from_gram, from_matrix, minimum
from lattice_invariants.harmonic_datum import (builtin_datum_nn, builtin_datum_p11, builtin_datum_p11_plane, builtin_datum_p22,
                                               builtin_datum_trivial)
from lattice_invariants.polynomial import PolynomialError, rsq, variables
from lattice_invariants.qseries import QExpansion, qs_divisible_by, qs_first_difference, qs_scale
from lattice_invariants.tests import fixtures
from lattice_invariants.theta import (spherical_theta, theta11, theta_datum, theta_nn, theta_series, trace_power,
                                      vanishing_floor)


def exact_coefficients(series):
    return {m: a for m, a in series.items()}


class TestThetaSeries(TestCase):

    def test_golden_expansions(self):
        self.assertEqual(fixtures.Z2_THETA_17, exact_coefficients(theta_series(fixtures.z2(), 17)))
        self.assertEqual(fixtures.HEX_THETA_19, exact_coefficients(theta_series(fixtures.hexagonal(), 19)))
        self.assertEqual(fixtures.SCHIEMANN_THETA, exact_coefficients(theta_series(fixtures.schiemann1(), 15)))
        self.assertEqual(fixtures.SCHIEMANN_THETA, exact_coefficients(theta_series(fixtures.schiemann2(), 15)))

    def test_zero_precision(self):
        self.assertEqual(QExpansion({0: 1}, 0), theta_series(fixtures.schiemann1(), 0))

    def test_metadata(self):
        series = theta_series(fixtures.z2(), 5)
        self.assertEqual(1, series.weight)
        self.assertEqual(4, series.level)
        self.assertEqual(2, theta_series(fixtures.schiemann1(), 3).weight)

    def test_errors(self):
        with self.assertRaises(ValueError):
            theta_series(fixtures.z2(), -1)
        with self.assertRaises(LatticeError):
            theta_series(from_gram([[1, Fraction(1, 3)], [Fraction(1, 3), 1]]), 4)


class TestTheta11(TestCase):

    def test_schiemann_pair(self):
        first = theta11(fixtures.schiemann1(), 15)
        second = theta11(fixtures.schiemann2(), 15)
        self.assertEqual(fixtures.SCHIEMANN1_THETA11, exact_coefficients(first))
        self.assertEqual(fixtures.SCHIEMANN2_THETA11, exact_coefficients(second))
        self.assertEqual(6, qs_first_difference(first, second))
        self.assertEqual(8, first.weight)
        self.assertEqual(1729, first.level)

    def test_square_lattice_vanishes(self):
        self.assertTrue(theta11(fixtures.z2(), 20).is_zero())

    def test_plane_bridge(self):
        for lattice in fixtures.random_lattices(seed=6, count=10, dims=(2,)):
            self.assertEqual(theta11(lattice, 10), qs_scale(theta_nn(lattice, 1, 10), 2))

    def test_float_oracle(self):
        for lattice in fixtures.random_lattices(seed=7, count=5, dims=(2, 3)):
            n = lattice.dim
            oracle = fixtures.float_pair_oracle(
                lattice, embed(lattice), 12,
                lambda u, v: n * n * np.dot(u, v) ** 2 - n * np.dot(u, u) * np.dot(v, v))
            exact = theta11(lattice, 12)
            for m in range(13):
                self.assertAlmostEqual(float(exact[m]), oracle[m], delta=1e-6 * max(1.0, abs(oracle[m])))


class TestThetaNN(TestCase):

    def test_trace_power(self):
        for k in range(6):
            self.assertEqual(2, trace_power(2, 1, k))
        self.assertEqual(-2, trace_power(0, 1, 2))
        self.assertEqual(Fraction(7), trace_power(3, 1, 2))
        with self.assertRaises(ValueError):
            trace_power(1, 1, -1)

    def test_square_lattice(self):
        z2 = fixtures.z2()
        theta22 = {2: 1, 3: -8, 4: 16, 5: 32, 6: -156, 7: 112, 8: 256, 9: -576}
        self.assertEqual({m: 16 * a for m, a in theta22.items()}, exact_coefficients(theta_nn(z2, 2, 9)))
        self.assertTrue(theta_nn(z2, 1, 20).is_zero())
        self.assertTrue(theta_nn(z2, 3, 20).is_zero())
        theta44 = {2: 1, 3: 32, 4: 256, 5: 512, 6: 6084, 7: -33728, 8: 65536}
        self.assertEqual({m: 16 * a for m, a in theta44.items()}, exact_coefficients(theta_nn(z2, 4, 8)))
        self.assertEqual(10, theta_nn(z2, 2, 4).weight)

    def test_hexagonal_lattice(self):
        hexagonal = fixtures.hexagonal()
        theta33 = {2: 1, 4: -54, 5: 128, 6: 729, 7: -3456, 8: 3524, 10: 16902}
        self.assertEqual({m: 36 * a for m, a in theta33.items()}, exact_coefficients(theta_nn(hexagonal, 3, 10)))
        for n in (1, 2, 4):
            self.assertTrue(theta_nn(hexagonal, n, 20).is_zero())

    def test_float_oracle(self):
        for lattice in fixtures.random_lattices(seed=8, count=5, dims=(2,)):
            embedding = embed(lattice)
            for n in (1, 2):
                def cosine_term(u, v):
                    zu = complex(u[0], u[1])
                    zv = complex(v[0], v[1])
                    return (zu ** (2 * n) * zv.conjugate() ** (2 * n)).real

                oracle = fixtures.float_pair_oracle(lattice, embedding, 12, cosine_term)
                exact = theta_nn(lattice, n, 12)
                for m in range(13):
                    self.assertAlmostEqual(float(exact[m]), oracle[m], delta=1e-6 * max(1.0, abs(oracle[m])))

    def test_errors(self):
        with self.assertRaises(LatticeError) as arc:
            theta_nn(fixtures.schiemann1(), 1, 5)
        self.assertEqual('dimension-mismatch', arc.exception.code)
        with self.assertRaises(ValueError):
            theta_nn(fixtures.z2(), 0, 5)


class TestVanishingAndDivisibility(TestCase):

    def _check(self, lattice, precision):
        k = int(minimum(lattice))
        floor = vanishing_floor(lattice)
        self.assertEqual(2 * k, floor)
        n = lattice.dim
        series = theta11(lattice, precision)
        self.assertTrue(qs_divisible_by(series, 4 * n if n % 2 == 0 else 2 * n))
        self.assertTrue(all(m >= floor for m, _ in series.items()))
        if n == 2:
            for order in (1, 2, 3, 4):
                series = theta_nn(lattice, order, precision)
                self.assertTrue(qs_divisible_by(series, 4))
                self.assertTrue(all(m >= floor for m, _ in series.items()))

    def test_fixture_lattices(self):
        for lattice in [fixtures.z2(), fixtures.hexagonal(), fixtures.schiemann1(), fixtures.schiemann2()]:
            self._check(lattice, 12)

    def test_random_lattices(self):
        for lattice in fixtures.random_lattices(seed=9, count=20):
            self._check(lattice, 8)


class TestSphericalTheta(TestCase):

    def _radial_harmonics(self):
        x = variables(4)
        radius = rsq(4)
        return [4 * x[i] * x[i] - radius for i in range(4)]

    def test_schiemann_shells(self):
        expected = {
            1: [(12, -8), (-4, 40), (-4, -16), (-4, -16)],
            2: [(12, -15), (-4, Fraction(33, 2)), (-4, Fraction(29, 2)), (-4, -16)],
        }
        published = {1: fixtures.schiemann1_published_factor(), 2: fixtures.schiemann2_published_factor()}
        lattices = {1: fixtures.schiemann1(), 2: fixtures.schiemann2()}
        squares_sum = {1: (192, -256), 2: (192, -480)}

        for index in (1, 2):
            lattice = lattices[index]
            embedding = from_matrix(published[index], lattice, tolerance=1e-9)
            total = None
            for h, (a2, a4) in zip(self._radial_harmonics(), expected[index]):
                series = spherical_theta(embedding, lattice, h, 6)
                self.assertAlmostEqual(0.0, series[0])
                self.assertAlmostEqual(float(a2), series[2], delta=1e-6)
                self.assertAlmostEqual(float(a4), series[4], delta=1e-6)
                square = series * series
                total = square if total is None else total + square
            self.assertAlmostEqual(squares_sum[index][0], total[4], delta=1e-5)
            self.assertAlmostEqual(squares_sum[index][1], total[6], delta=1e-5)

    def test_full_p11_datum_matches_theta11(self):
        lattice = fixtures.schiemann1()
        embedding = from_matrix(fixtures.schiemann1_published_factor(), lattice, tolerance=1e-9)
        series = theta_datum(embedding, lattice, builtin_datum_p11(4), 15)
        self.assertLess(series.max_abs_difference(theta11(lattice, 15)), 1e-6 * 16272)
        self.assertEqual(8, series.weight)
        self.assertEqual(1729, series.level)

    def test_datum_is_embedding_independent(self):
        x = variables(4)
        h = x[0] * x[1]
        for lattice in [fixtures.schiemann1(), fixtures.schiemann2()]:
            datum = builtin_datum_p11(4)
            embedding = embed(lattice)
            standard = theta_datum(embedding, lattice, datum, 8)
            largest_change = 0.0
            for seed in range(20):
                rotated = embedding.rotated(fixtures.random_orthogonal(100 + seed, 4))
                moved = theta_datum(rotated, lattice, datum, 8)
                for m in range(9):
                    self.assertAlmostEqual(standard[m], moved[m], delta=1e-8 * max(1.0, abs(standard[m])))
                largest_change = max(largest_change, spherical_theta(embedding, lattice, h, 8).max_abs_difference(
                    spherical_theta(rotated, lattice, h, 8)))
            # the individual factors do move
            self.assertGreater(largest_change, 1e-2)

    def test_square_lattice_data(self):
        z2 = fixtures.z2()
        embedding = embed(z2)
        plane = theta_datum(embedding, z2, builtin_datum_p11_plane(), 12)
        self.assertLess(max(abs(a) for a in plane.coefficients()), 1e-9)
        trivial = theta_datum(embedding, z2, builtin_datum_trivial(2), 12)
        self.assertEqual(0.0, trivial.max_abs_difference(theta_series(z2, 12)))
        self.assertEqual(1, trivial.weight)
        # only the quartic factor survives on the unit vectors
        p22 = theta_datum(embedding, z2, builtin_datum_p22(), 6)
        self.assertAlmostEqual(16.0, p22[2], delta=1e-9)

    def test_plane_data_match_exact_engines(self):
        lattices = [fixtures.z2(), fixtures.hexagonal()] + fixtures.random_lattices(seed=12, count=3, dims=(2,))
        for lattice in lattices:
            embedding = embed(lattice)
            cases = [(theta_nn(lattice, n, 10), builtin_datum_nn(n)) for n in (1, 2, 3)]
            # Re((x0 + i x1)^4) is the quartic and Im is 4 times the twisted factor
            cases.append((theta_nn(lattice, 2, 10), builtin_datum_p22()))
            for exact, datum in cases:
                floating = theta_datum(embedding, lattice, datum, 10)
                self.assertEqual(exact.weight, floating.weight)
                for m in range(11):
                    self.assertAlmostEqual(float(exact[m]), floating[m], delta=1e-6 * max(1.0, abs(float(exact[m]))))

    def test_zeroing_tolerance_and_weight(self):
        z2 = fixtures.z2()
        x0, x1 = variables(2)
        series = spherical_theta(embed(z2), z2, x0 * x1, 10, tol=1e-9)
        self.assertEqual([0.0] * 11, series.coefficients())
        self.assertEqual(3, series.weight)
        self.assertEqual(4, series.level)

    def test_errors(self):
        z2 = fixtures.z2()
        x0, x1 = variables(2)
        with self.assertRaises(PolynomialError):
            spherical_theta(embed(z2), z2, x0 * x0, 4)
        with self.assertRaises(PolynomialError):
            spherical_theta(embed(z2), z2, variables(3)[0], 4)
        skewed = from_gram([[1, Fraction(1, 3)], [Fraction(1, 3), 1]])
        with self.assertRaises(LatticeError):
            spherical_theta(embed(skewed), skewed, x0 * x1, 4)
