# flake8: noqa
import itertools
import math
import os
import random
from fractions import Fraction

import numpy as np

from lattice_invariants import EXAMPLE_DIR
from lattice_invariants.gram_lattice import LatticeError, from_gram, inner, read_gram_file

TESTFILES_DIR = os.path.join(os.path.dirname(os.path.realpath(__file__)), 'testfiles')

Z2_GRAM = os.path.join(EXAMPLE_DIR, 'z2.gram')
HEX_GRAM = os.path.join(EXAMPLE_DIR, 'hex.gram')
SCHIEMANN1_GRAM = os.path.join(EXAMPLE_DIR, 'schiemann1.gram')
SCHIEMANN2_GRAM = os.path.join(EXAMPLE_DIR, 'schiemann2.gram')
P11_PLANE_DATUM = os.path.join(EXAMPLE_DIR, 'p11-plane.yml')
P22_DATUM = os.path.join(EXAMPLE_DIR, 'p22.yml')


def z2():
    return read_gram_file(Z2_GRAM)


def hexagonal():
    return read_gram_file(HEX_GRAM)


def schiemann1():
    return read_gram_file(SCHIEMANN1_GRAM)


def schiemann2():
    return read_gram_file(SCHIEMANN2_GRAM)


def schiemann1_published_factor():
    """
    The upper triangular factor S₁ with S₁ᵀS₁ = G₁ as published alongside the lattice.
    """
    s = np.array([
        [2.0, 1.0, 0.0, 0.5],
        [0.0, math.sqrt(7), 3 * math.sqrt(7) / 7, math.sqrt(7) / 14],
        [0.0, 0.0, math.sqrt(427) / 7, 67 * math.sqrt(427) / 854],
        [0.0, 0.0, 0.0, math.sqrt(105469) / 122],
    ])
    return s / math.sqrt(2)


def schiemann2_published_factor():
    s = np.array([
        [2.0, 0.0, 0.5, 0.5],
        [0.0, 2 * math.sqrt(2), math.sqrt(2) / 4, -math.sqrt(2)],
        [0.0, 0.0, math.sqrt(122) / 4, 9 * math.sqrt(122) / 122],
        [0.0, 0.0, 0.0, math.sqrt(105469) / 122],
    ])
    return s / math.sqrt(2)


# Θ(q) shared by both Schiemann lattices, through q^15
SCHIEMANN_THETA = {0: 1, 2: 2, 4: 4, 5: 6, 6: 10, 7: 6, 8: 12, 9: 6, 10: 6, 11: 8, 12: 10, 13: 8, 14: 10, 15: 22}

SCHIEMANN1_THETA11 = {4: 192, 6: -256, 7: -896, 8: 1120, 9: -2848, 10: 3024, 11: -2112, 12: 13536, 13: -4064,
                      14: -16272, 15: -4544}

SCHIEMANN2_THETA11 = {4: 192, 6: -480, 7: -608, 8: 736, 9: -1312, 10: 3216, 11: 1056, 12: -2048, 13: -2624,
                      14: 2896, 15: -12288}

Z2_THETA_17 = {0: 1, 1: 4, 2: 4, 4: 4, 5: 8, 8: 4, 9: 4, 10: 8, 13: 8, 16: 4, 17: 8}

HEX_THETA_19 = {0: 1, 1: 6, 3: 6, 4: 6, 7: 12, 9: 6, 12: 6, 13: 12, 16: 6, 19: 12}


def random_integral_lattice(rng, dim, max_tries=100):
    """
    A random integral lattice: G = BᵀB for an upper triangular integer B with diagonal in {1, 2}, plus random
    half-integer shifts of the off-diagonal entries while G stays positive definite.

    @param rng: a `random.Random` instance.
    """
    for _ in range(max_tries):
        basis = [[0] * dim for _ in range(dim)]
        for i in range(dim):
            basis[i][i] = rng.choice([1, 2])
            for j in range(i + 1, dim):
                basis[i][j] = rng.randint(-1, 1)
        gram = [[Fraction(sum(basis[k][i] * basis[k][j] for k in range(dim))) for j in range(dim)]
                for i in range(dim)]
        for i in range(dim):
            for j in range(i + 1, dim):
                shift = Fraction(rng.choice([-1, 0, 0, 1]), 2)
                gram[i][j] += shift
                gram[j][i] += shift
        try:
            return from_gram(gram)
        except LatticeError:
            continue
    raise RuntimeError('No positive definite Gram matrix found in {} tries'.format(max_tries))


def random_rational_lattice(rng, dim):
    """
    G = BᵀB for an upper triangular B with small rational entries and a nonzero diagonal, so G is positive
    definite but usually not integral.
    """
    basis = [[Fraction(0)] * dim for _ in range(dim)]
    for i in range(dim):
        basis[i][i] = Fraction(rng.randint(1, 3), rng.randint(1, 3))
        for j in range(i + 1, dim):
            basis[i][j] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return from_gram([[sum(basis[k][i] * basis[k][j] for k in range(dim)) for j in range(dim)]
                      for i in range(dim)])


def random_lattices(seed, count, dims=(2, 3, 4)):
    rng = random.Random(seed)
    return [random_integral_lattice(rng, rng.choice(dims)) for _ in range(count)]


def random_orthogonal(seed, n):
    generator = np.random.default_rng(seed)
    q, r = np.linalg.qr(generator.normal(size=(n, n)))
    return q * np.sign(np.diag(r))


def brute_force_vectors(lattice, bound):
    """
    Every nonzero coordinate vector with norm² <= bound, found by scanning a box. The box half-widths
    sqrt(bound·(G⁻¹)_ii) contain the whole ellipsoid.
    """
    inverse = np.linalg.inv(lattice.gram_as_float())
    widths = [int(math.floor(math.sqrt(float(bound) * inverse[i][i]) + 1e-9)) for i in range(lattice.dim)]
    found = []
    for coords in itertools.product(*[range(-w, w + 1) for w in widths]):
        if not any(coords):
            continue
        vec_norm = inner(lattice, coords, coords)
        if vec_norm <= bound:
            found.append((vec_norm, coords))
    return sorted(found)


def float_pair_oracle(lattice, embedding, precision, summand):
    """
    a_m = Σ summand(γ, δ) over ordered pairs of nonzero embedded vectors with |γ|² + |δ|² = m, in floats.
    """
    vectors = [(int(vec_norm), embedding.embedded(coords)) for vec_norm, coords in brute_force_vectors(
        lattice, precision)]
    coefficients = [0.0] * (precision + 1)
    for norm_u, u in vectors:
        for norm_v, v in vectors:
            if norm_u + norm_v <= precision:
                coefficients[norm_u + norm_v] += summand(u, v)
    return coefficients
