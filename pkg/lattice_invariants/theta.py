"""
# theta

Theta series engines.

Exact engines (`theta_series`, `theta11`, `theta_nn`) use only the Gram matrix: norms and inner products of
coordinate vectors. For an integral lattice M = 2G is an integer matrix, so b1 = uᵀMv = 2⟨γ,δ⟩ and every
norm are integers and the pair sums are accumulated in integer arithmetic.

Floating engines (`spherical_theta`, `theta_datum`) evaluate harmonic polynomials on embedded vectors S·x.

Pair engines cost O(V²) with V the number of vectors of norm <= M - k; the per-pair terms depend on the
inner product and so do not factor by shell.
"""
import logging
import math
from collections import OrderedDict
from fractions import Fraction

from lattice_invariants.gram_lattice import LatticeError, level_and_discriminant, minimum, short_vectors
from lattice_invariants.harmonic_datum import DatumError, datum_weight
from lattice_invariants.polynomial import PolynomialError, is_harmonic
from lattice_invariants.qseries import FloatSeries, QExpansion

logger = logging.getLogger(__name__)


def _check_precision(precision):
    if precision < 0:
        raise ValueError('The q-expansion precision must be non-negative, got {}'.format(precision))


def _doubled_gram(lattice):
    return [[int(2 * v) for v in row] for row in lattice.gram]


def _integer_vectors(lattice, bound):
    """
    @returns: a list of (coords, norm, doubled_gram @ coords) for every nonzero vector of norm <= bound, sorted
              by norm. Norms and the image vectors are Python ints.
    """
    doubled = _doubled_gram(lattice)
    n = lattice.dim
    vectors = []
    for coords, vec_norm in short_vectors(lattice, bound):
        image = [sum(doubled[i][j] * coords.coords[j] for j in range(n)) for i in range(n)]
        vectors.append((coords.coords, int(vec_norm), image))
    return vectors


def vanishing_floor(lattice):
    return 2 * minimum(lattice)


def theta_series(lattice, precision):
    """
    Θ(q) = Σ_γ q^{|γ|²}; a_0 = 1 for the zero vector.
    """
    _check_precision(precision)
    lattice.require_integral('an exact theta series')
    counts = {0: 1}
    for _, vec_norm in short_vectors(lattice, precision):
        m = int(vec_norm)
        counts[m] = counts.get(m, 0) + 1
    level = level_and_discriminant(lattice).level
    return QExpansion(counts, precision, weight=Fraction(lattice.dim, 2), level=level)


def _pair_sum(lattice, precision, term):
    """
    Accumulates term(b1, norm_u, norm_v) over ordered pairs of nonzero vectors with norm_u + norm_v <= precision.
    """
    k = int(minimum(lattice))
    if precision - k < k:
        return {}
    vectors = _integer_vectors(lattice, precision - k)
    logger.debug('Pair sum over {} vectors through q^{}'.format(len(vectors), precision))

    sums = {}
    for coords_u, norm_u, _ in vectors:
        for coords_v, norm_v, image_v in vectors:
            m = norm_u + norm_v
            if m > precision:
                break
            b1 = sum(a * b for a, b in zip(coords_u, image_v))
            sums[m] = sums.get(m, 0) + term(b1, norm_u, norm_v)
    return sums


def theta11(lattice, precision):
    """
    a_m = Σ_{|γ|²+|δ|²=m} (n²⟨γ,δ⟩² - n|γ|²|δ|²), a cusp form of weight n + 4.

    With b1 = 2⟨γ,δ⟩ the summand is (n²·b1² - 4n·|γ|²|δ|²) / 4, accumulated over integers.
    """
    _check_precision(precision)
    lattice.require_integral('theta11')
    n = lattice.dim

    def quadruple_term(b1, norm_u, norm_v):
        return n * n * b1 * b1 - 4 * n * norm_u * norm_v

    sums = _pair_sum(lattice, precision, quadruple_term)
    level = level_and_discriminant(lattice).level
    return QExpansion({m: Fraction(total, 4) for m, total in sums.items()}, precision,
                      weight=n + 4, level=level)


def trace_power(b1, b2, k):
    """
    t_k = x^k + x̄^k for the roots of x² - b1·x + b2 = 0: t_0 = 2, t_1 = b1, t_k = b1·t_{k-1} - b2·t_{k-2}.
    """
    if k < 0:
        raise ValueError('trace_power needs k >= 0, got {}'.format(k))
    previous, current = 2, b1
    if k == 0:
        return Fraction(previous)
    for _ in range(k - 1):
        previous, current = current, b1 * current - b2 * previous
    return Fraction(current)


def theta_nn(lattice, n, precision):
    """
    a_m = Σ cos(2n∠(γ,δ))|γ|^{2n}|δ|^{2n} = (1/2)Σ t_{2n}(2⟨γ,δ⟩, |γ|²|δ|²), weight 2 + 4n. Dimension 2 only.
    """
    _check_precision(precision)
    if lattice.dim != 2:
        raise LatticeError('dimension-mismatch', 'theta_nn is only defined for 2-dimensional lattices, got'
                                                 ' dimension {}'.format(lattice.dim))
    if n < 1:
        raise ValueError('theta_nn needs n >= 1, got {}'.format(n))
    lattice.require_integral('theta_nn')

    def doubled_term(b1, norm_u, norm_v):
        return int(trace_power(b1, norm_u * norm_v, 2 * n))

    sums = _pair_sum(lattice, precision, doubled_term)
    level = level_and_discriminant(lattice).level
    return QExpansion({m: Fraction(total, 2) for m, total in sums.items()}, precision,
                      weight=2 + 4 * n, level=level)


def spherical_theta(embedding, lattice, h, precision, tol=None):
    """
    Θ_h(q) = Σ_γ h(S·γ) q^{|γ|²} for a homogeneous harmonic h.

    @param tol: when given, coefficients with |a_m| <= tol are reported as exactly 0.0.
    @returns: a FloatSeries.
    """
    _check_precision(precision)
    if h.nvars != lattice.dim:
        raise PolynomialError('The polynomial has {} variables but the lattice has dimension {}'.format(
            h.nvars, lattice.dim))
    if not h.is_homogeneous() or not is_harmonic(h):
        raise PolynomialError('Spherical theta functions need a homogeneous harmonic polynomial, got "{}"'.format(h))
    lattice.require_integral('a spherical theta function')

    vectors = short_vectors(lattice, precision)
    shells = OrderedDict()
    if vectors:
        points = embedding.embedded_many([sv.vector.coords for sv in vectors])
        values = h.evaluate_many(points)
        for sv, value in zip(vectors, values):
            shells.setdefault(int(sv.norm), []).append(float(value))

    coefficients = {m: math.fsum(values) for m, values in shells.items()}
    coefficients[0] = float(h.coefficient((0,) * lattice.dim))
    if tol is not None:
        coefficients = {m: (0.0 if abs(a_m) <= tol else a_m) for m, a_m in coefficients.items()}

    degree = max(h.degree, 0)
    return FloatSeries(coefficients, precision, weight=Fraction(lattice.dim, 2) + degree,
                       level=level_and_discriminant(lattice).level)


def theta_datum(embedding, lattice, datum, precision):
    """
    Θ_p = Σ_j c_j Π_i Θ_{h_ij}, truncated at `precision`. Each distinct factor is evaluated once.
    """
    _check_precision(precision)
    if datum.nvars != lattice.dim:
        raise DatumError('The harmonic datum lives in dimension {} but the lattice has dimension {}'.format(
            datum.nvars, lattice.dim))

    cache = {}
    total = None
    for term in datum.terms:
        product = None
        for factor in term.factors:
            if factor not in cache:
                cache[factor] = spherical_theta(embedding, lattice, factor, precision)
            product = cache[factor] if product is None else product * cache[factor]
        scaled = product * float(term.coefficient)
        total = scaled if total is None else total + scaled

    level = level_and_discriminant(lattice).level
    return total.with_metadata(weight=datum_weight(datum, lattice.dim), level=level)
