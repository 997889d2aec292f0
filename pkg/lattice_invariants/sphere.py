"""
Exact integration of polynomials over the unit sphere S^{N-1} in R^N with the normalised invariant measure
(total mass 1).

All public functions take `ambient_dim` = N, the number of variables. Internally the closed forms are written
for S^n in R^{n+1}, so they use n = ambient_dim - 1.
"""
import logging
import math
from fractions import Fraction

from lattice_invariants.polynomial import PolynomialError, laplacian_power

logger = logging.getLogger(__name__)


def _check_ambient_dim(ambient_dim, length):
    if ambient_dim < 1:
        raise PolynomialError('The ambient dimension must be at least 1, got {}'.format(ambient_dim))
    if length != ambient_dim:
        raise PolynomialError('Expected {} variables for a sphere in R^{}, got {}'.format(
            ambient_dim, ambient_dim, length))


def monomial_integral(exponent, ambient_dim):
    """
    ∫ x^I dμ̄ = Π (i_k! / (i_k/2)!) · Π_{m=1}^{d/2} 1 / (2(n + 2m - 1)), and 0 when any i_k is odd.
    """
    _check_ambient_dim(ambient_dim, len(exponent))
    if any(e % 2 for e in exponent):
        return Fraction(0)

    n = ambient_dim - 1
    result = Fraction(1)
    for e in exponent:
        result *= Fraction(math.factorial(e), math.factorial(e // 2))
    for m in range(1, sum(exponent) // 2 + 1):
        result /= 2 * (n + 2 * m - 1)
    return result


def sphere_alpha(k, ambient_dim):
    """
    α_{2k} = 1 / ((-2)^k k! Π_{m=1}^k (n + 2m - 1)) with n = ambient_dim - 1 the dimension of the sphere, so that
    ∫ P dμ̄ = α_{2k} Δ^k P for P homogeneous of degree 2k.
    """
    n = ambient_dim - 1
    denominator = (-2) ** k * math.factorial(k)
    for m in range(1, k + 1):
        denominator *= n + 2 * m - 1
    return Fraction(1, denominator)


def homogeneous_integral(p, ambient_dim):
    _check_ambient_dim(ambient_dim, p.nvars)
    if not p.is_homogeneous():
        raise PolynomialError('homogeneous_integral needs a homogeneous polynomial, got "{}"'.format(p))
    if p.is_zero() or p.degree % 2:
        return Fraction(0)

    k = p.degree // 2
    reduced = laplacian_power(p, k)
    return sphere_alpha(k, ambient_dim) * reduced.coefficient((0,) * ambient_dim)


def polynomial_sphere_integral(p, ambient_dim):
    total = Fraction(0)
    for _, part in sorted(p.homogeneous_parts().items()):
        total += homogeneous_integral(part, ambient_dim)
    return total
