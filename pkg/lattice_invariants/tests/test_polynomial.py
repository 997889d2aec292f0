import math
import random
from fractions import Fraction
from unittest import TestCase

import sympy

from lattice_invariants.polynomial import (Polynomial, PolynomialError, constant, exponent_vectors,
                                           format_polynomial, gaussian_apply, gaussian_operator, harmonic_decompose,
                                           is_harmonic, laplacian, laplacian_power, monomial, pair, parse_polynomial,
                                           rsq, variables)


def to_sympy(p, symbols):
    return sum((sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c) *
               sympy.Mul(*[s ** e for s, e in zip(symbols, exponent)])
               for exponent, c in p.items())


def random_polynomial(rng, nvars, degree, homogeneous=False):
    terms = {}
    degrees = [degree] if homogeneous else range(degree + 1)
    for d in degrees:
        for exponent in exponent_vectors(nvars, d):
            if rng.random() < 0.6:
                terms[exponent] = rng.randint(-4, 4)
    return Polynomial(nvars, terms)


class TestPolynomialAlgebra(TestCase):

    def setUp(self):
        self.x0, self.x1, self.x2 = variables(3)

    def test_arithmetic(self):
        p = (self.x0 + self.x1) ** 2
        self.assertEqual(self.x0 * self.x0 + 2 * self.x0 * self.x1 + self.x1 * self.x1, p)
        self.assertEqual(constant(1, 3), p ** 0)
        self.assertEqual(p - p, Polynomial(3))
        self.assertEqual(2, p.degree)
        self.assertTrue(p.is_homogeneous())
        self.assertFalse((p + 1).is_homogeneous())
        self.assertEqual(float('-inf'), Polynomial(3).degree)

    def test_mixed_variable_counts_are_rejected(self):
        with self.assertRaises(PolynomialError):
            self.x0 + variables(2)[0]
        with self.assertRaises(PolynomialError):
            Polynomial(2, {(1, 0, 0): 1})

    def test_float_coefficients_are_kept(self):
        p = self.x0 * 0.5
        self.assertFalse(p.is_exact())
        self.assertEqual(0.5, p.coefficient((1, 0, 0)))

    def test_derivative_and_evaluate(self):
        p = self.x0 ** 3 * self.x1 - 2 * self.x2
        self.assertEqual(3 * self.x0 ** 2 * self.x1, p.derivative(0))
        self.assertEqual(Fraction(8 * 3 - 2 * 5), p.evaluate([2, 3, 5]))
        values = p.evaluate_many([[2, 3, 5], [1, 1, 1]])
        self.assertEqual([14.0, -1.0], list(values))

    def test_laplacian_sign(self):
        self.assertEqual(constant(-2, 3), laplacian(self.x0 * self.x0))
        self.assertEqual(constant(-6, 3), laplacian(rsq(3)))
        self.assertTrue(is_harmonic(self.x0 * self.x1))
        self.assertTrue(is_harmonic(self.x0 ** 2 - self.x2 ** 2))
        self.assertEqual(Polynomial(3), laplacian_power(rsq(3) ** 2, 3))

    def test_exponent_vectors(self):
        for nvars, degree in [(1, 4), (2, 3), (3, 4), (4, 6)]:
            vectors = list(exponent_vectors(nvars, degree))
            self.assertEqual(math.comb(nvars + degree - 1, degree), len(vectors))
            self.assertEqual(sorted(vectors, reverse=True), vectors)

    def test_compose_linear(self):
        x0, x1 = variables(2)
        quarter_turn = [[0, -1], [1, 0]]
        self.assertEqual(-(x0 * x0 - x1 * x1), (x0 * x0 - x1 * x1).compose_linear(quarter_turn))
        self.assertEqual(rsq(2), rsq(2).compose_linear(quarter_turn))
        self.assertEqual(constant(3, 2), constant(3, 2).compose_linear(quarter_turn))

    def test_parse_and_format(self):
        p = parse_polynomial('x0^4 - 6 x0^2 x1^2 + x1^4', 2)
        x0, x1 = variables(2)
        self.assertEqual(x0 ** 4 - 6 * x0 ** 2 * x1 ** 2 + x1 ** 4, p)
        self.assertEqual(Fraction(-1, 2) * x0 + 3, parse_polynomial('-1/2 x0 + 3', 2))
        self.assertEqual(p, parse_polynomial(format_polynomial(p), 2))
        self.assertEqual('0', format_polynomial(Polynomial(2)))
        for bad in ['', 'x2', 'x0 +', 'y0', '2 ^ x0']:
            with self.assertRaises(PolynomialError):
                parse_polynomial(bad, 2)


class TestPairing(TestCase):

    def setUp(self):
        self.rng = random.Random(1729)

    def test_pair_of_monomials(self):
        self.assertEqual(Fraction(2 * 6), pair(monomial((2, 3)), monomial((2, 3))))
        self.assertEqual(Fraction(0), pair(monomial((2, 3)), monomial((3, 2))))

    def test_monomial_norms_are_factorials(self):
        for _ in range(40):
            nvars = self.rng.randint(1, 4)
            exponent = self.rng.choice(list(exponent_vectors(nvars, self.rng.randint(0, 6))))
            expected = 1
            for e in exponent:
                expected *= math.factorial(e)
            self.assertEqual(expected, pair(monomial(exponent), monomial(exponent)), exponent)

    def test_symmetric_and_positive(self):
        for _ in range(10):
            p = random_polynomial(self.rng, 3, 4)
            q = random_polynomial(self.rng, 3, 4)
            self.assertEqual(pair(p, q), pair(q, p))
            if not p.is_zero():
                self.assertGreater(pair(p, p), 0)

    def test_adjoint_of_multiplication(self):
        # ⟨P·Q, F⟩ = ⟨P, Q(∂)F⟩
        for _ in range(10):
            p = random_polynomial(self.rng, 3, 2)
            q = random_polynomial(self.rng, 3, 2)
            f = random_polynomial(self.rng, 3, 4)
            self.assertEqual(pair(p * q, f), pair(p, f.apply_operator(q)))

    def test_matches_sympy_differentiation(self):
        symbols = sympy.symbols('x0 x1')
        p = random_polynomial(self.rng, 2, 3)
        f = random_polynomial(self.rng, 2, 3)
        expr = to_sympy(f, symbols)
        total = 0
        for exponent, coef in p.items():
            derived = expr
            for s, e in zip(symbols, exponent):
                if e:
                    derived = sympy.diff(derived, s, e)
            total += sympy.Rational(coef.numerator, coef.denominator) * derived.subs({s: 0 for s in symbols})
        self.assertEqual(sympy.Rational(pair(p, f).numerator, pair(p, f).denominator), sympy.nsimplify(total))


class TestHarmonicDecomposition(TestCase):

    def test_reconstructs_random_polynomials(self):
        rng = random.Random(5)
        for nvars, degree in [(2, 4), (3, 4), (3, 5), (4, 3)]:
            p = random_polynomial(rng, nvars, degree, homogeneous=True)
            parts = harmonic_decompose(p)
            radius = rsq(nvars)
            total = Polynomial(nvars)
            for l, h in parts:
                self.assertTrue(is_harmonic(h))
                self.assertTrue(h.is_homogeneous())
                self.assertEqual(degree - 2 * l, h.degree)
                total = total + radius ** l * h
            self.assertEqual(p, total)
            self.assertEqual(sorted(l for l, _ in parts), [l for l, _ in parts])

    def test_laplacian_of_radial_multiples(self):
        # with n the dimension of the sphere, Δ(rsq^m h) = -2m(n + 2m + 2 deg h - 1) rsq^(m-1) h
        rng = random.Random(11)
        for nvars, degree in [(2, 3), (3, 2), (3, 4), (4, 3)]:
            h = Polynomial(nvars)
            while h.is_zero():
                parts = dict(harmonic_decompose(random_polynomial(rng, nvars, degree, homogeneous=True)))
                h = parts.get(0, Polynomial(nvars))
            radius = rsq(nvars)
            sphere_dim = nvars - 1
            for m in (1, 2, 3):
                expected = -2 * m * (sphere_dim + 2 * m + 2 * degree - 1) * radius ** (m - 1) * h
                self.assertEqual(expected, laplacian(radius ** m * h), (nvars, degree, m))

    def test_pure_powers_of_the_radius(self):
        self.assertEqual([(2, constant(1, 3))], harmonic_decompose(rsq(3) ** 2))
        x0, x1 = variables(2)
        self.assertEqual([(0, x0 * x1)], harmonic_decompose(x0 * x1))
        self.assertEqual([], harmonic_decompose(Polynomial(2)))

    def test_rejects_inhomogeneous(self):
        x0, _ = variables(2)
        with self.assertRaises(PolynomialError):
            harmonic_decompose(x0 * x0 + x0)


class TestGaussian(TestCase):

    def test_closed_form_examples(self):
        x0, = variables(1)
        # ∂² exp(-x²/2) at 0
        self.assertEqual(-1.0, gaussian_apply(x0 * x0, -1, [0]))
        self.assertEqual(x0 * x0 - 1, gaussian_operator(x0 * x0, -1))
        with self.assertRaises(PolynomialError):
            gaussian_operator(x0, 0)

    def test_harmonic_shift(self):
        x0, x1 = variables(2)
        h = x0 * x1
        a = Fraction(-1, 2)
        shift = [0.7, -1.3]
        expected = float(a ** 2) * h.evaluate([-0.7, 1.3]) * math.exp(float(a) / 2 * (0.49 + 1.69))
        self.assertAlmostEqual(expected, gaussian_apply(h, a, shift), places=12)

    def test_matches_sympy(self):
        rng = random.Random(11)
        symbols = sympy.symbols('x0 x1 x2')
        for _ in range(4):
            p = random_polynomial(rng, 3, 3)
            a = Fraction(-rng.randint(1, 4), rng.randint(1, 3))
            shift = [rng.uniform(-1, 1) for _ in range(3)]
            gaussian = sympy.exp(sympy.Rational(a.numerator, a.denominator) / 2 *
                                 sum((s - c) ** 2 for s, c in zip(symbols, shift)))
            total = 0
            for exponent, coef in p.items():
                derived = gaussian
                for s, e in zip(symbols, exponent):
                    if e:
                        derived = sympy.diff(derived, s, e)
                total += float(coef) * float(derived.subs({s: 0 for s in symbols}))
            value = gaussian_apply(p, a, shift)
            self.assertLessEqual(abs(value - total), 1e-9 * max(1.0, abs(total)))
