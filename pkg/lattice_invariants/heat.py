"""
# heat

Numerical heat flux of a lattice,

    f_t(x) = (4πt)^{-n/2} Σ_γ exp(-|x - γ|² / 4t),

and the quantities derived from it: the pairings ⟨P, f_t⟩ = P(∂)f_t(0), the t-derivatives of f_t(0), the Taylor
parts f_k and their sphere integrals c_{k1..km}.

Lattice sums are truncated at |γ|² <= B with B = 4t·(ln(1/ε) + n·ln(1 + 1/t) + 20). Vectors are embedded with
the context's `Embedding`, which defaults to the Cholesky factor.
"""
import logging
import math
from fractions import Fraction

import numpy as np

from lattice_invariants.gram_lattice import embed, short_vectors
from lattice_invariants.harmonic_datum import builtin_datum_p11, builtin_datum_p22
from lattice_invariants.polynomial import (Polynomial, exponent_vectors, gaussian_operator, monomial, rsq,
                                           variables)
from lattice_invariants.sphere import polynomial_sphere_integral, sphere_alpha

logger = logging.getLogger(__name__)

MAX_TIME_DERIVATIVE = 6
MAX_TAYLOR_DEGREE = 8
TRUNCATION_MARGIN = 20


class HeatError(ValueError):
    pass


def truncation_bound(t, epsilon, n):
    return 4 * t * (math.log(1.0 / epsilon) + n * math.log(1.0 + 1.0 / t) + TRUNCATION_MARGIN)


def relative_error(lhs, rhs, scale=0.0):
    """
    |lhs - rhs| relative to the larger of |lhs|, |rhs| and a reference magnitude `scale`. Identities whose sides
    vanish by symmetry pass the size of the summed terms as `scale`.
    """
    denominator = max(abs(lhs), abs(rhs), abs(scale))
    if denominator == 0:
        return 0.0
    return abs(lhs - rhs) / denominator


class LatticePoints(object):
    """
    The lattice points with norm² <= bound, origin included: coordinates, embedded vectors and float norms.
    """

    def __init__(self, embedding, bound):
        lattice = embedding.lattice
        enumerated = short_vectors(lattice, Fraction(math.ceil(bound)))
        coords = [(0,) * lattice.dim] + [sv.vector.coords for sv in enumerated]
        self.bound = bound
        self.coords = coords
        self.points = embedding.embedded_many(coords)
        self.norms = np.array([0.0] + [float(sv.norm) for sv in enumerated])


class HeatContext(object):
    """
    @param lattice: a GramLattice.
    @param t: heat time, t > 0.
    @param epsilon: target absolute truncation error, epsilon > 0.
    @param embedding: optional Embedding of `lattice`; `embed(lattice)` when omitted.
    """

    def __init__(self, lattice, t, epsilon=1e-12, embedding=None):
        if not t > 0:
            raise HeatError('The heat time t must be positive, got {}'.format(t))
        if not epsilon > 0:
            raise HeatError('The truncation target epsilon must be positive, got {}'.format(epsilon))

        self.lattice = lattice
        self.t = float(t)
        self.epsilon = float(epsilon)
        self.embedding = embedding if embedding is not None else embed(lattice)
        self.truncation_bound = truncation_bound(self.t, self.epsilon, lattice.dim)
        self._points = {}
        self._pairings = {}

    @property
    def dim(self):
        return self.lattice.dim

    @property
    def prefactor(self):
        return (4 * math.pi * self.t) ** (-self.dim / 2.0)

    @property
    def gaussian_parameter(self):
        # exp(-|x|²/4t) = exp((a/2)|x|²) with a = -1/(2t)
        return -1.0 / (2.0 * self.t)

    @property
    def nome(self):
        return math.exp(-1.0 / (4.0 * self.t))

    def lattice_points(self, bound=None):
        if bound is None:
            bound = self.truncation_bound
        if bound not in self._points:
            self._points[bound] = LatticePoints(self.embedding, bound)
            logger.debug('Heat context t={} cached {} lattice points with norm² <= {:.3f}'.format(
                self.t, len(self._points[bound].coords), bound))
        return self._points[bound]

    def with_embedding(self, embedding):
        return HeatContext(self.lattice, self.t, self.epsilon, embedding=embedding)


def f_eval(ctx, x, bound=None):
    """
    f_t(x). Points away from the origin are handled by widening the enumeration to (|x| + √B)².
    """
    x = np.asarray(x, dtype=float)
    if bound is None:
        bound = ctx.truncation_bound
    radius = float(np.linalg.norm(x))
    if radius > 0:
        bound = (radius + math.sqrt(bound)) ** 2
    pts = ctx.lattice_points(bound)
    distances = np.sum((pts.points - x) ** 2, axis=1)
    return ctx.prefactor * math.fsum(np.exp(-distances / (4.0 * ctx.t)))


def heat_pair(ctx, p):
    """
    ⟨P, f_t⟩ = (4πt)^{-n/2} Σ_γ Q(-γ) exp(-|γ|²/4t), where Q is the Gaussian closed form of P(∂) with a = -1/(2t).
    """
    key = p
    if key not in ctx._pairings:
        q = gaussian_operator(p, ctx.gaussian_parameter)
        pts = ctx.lattice_points()
        weights = np.exp(-pts.norms / (4.0 * ctx.t))
        values = q.evaluate_many(-pts.points) * weights
        ctx._pairings[key] = ctx.prefactor * math.fsum(values)
    return ctx._pairings[key]


def heat_pair_magnitude(ctx, p):
    """
    (4πt)^{-n/2} Σ_γ |Q(-γ)| exp(-|γ|²/4t): the size of the terms summed by heat_pair, used as the reference
    magnitude when heat_pair itself cancels to (nearly) zero.
    """
    q = gaussian_operator(p, ctx.gaussian_parameter)
    pts = ctx.lattice_points()
    weights = np.exp(-pts.norms / (4.0 * ctx.t))
    return ctx.prefactor * math.fsum(np.abs(q.evaluate_many(-pts.points)) * weights)


def harmonic_lattice_sum(ctx, h):
    """
    (4πt)^{-n/2} Σ_γ h(γ) exp(-|γ|²/4t), evaluated directly on the embedded lattice points. For a homogeneous
    harmonic h of degree d this equals (2t)^d·⟨h, f_t⟩.
    """
    pts = ctx.lattice_points()
    weights = np.exp(-pts.norms / (4.0 * ctx.t))
    return ctx.prefactor * math.fsum(h.evaluate_many(pts.points) * weights)


def heat_pair_dt(ctx, p):
    """
    ⟨P, ∂_t f_t⟩, computed as ⟨P·rsq, f_t⟩.
    """
    return heat_pair(ctx, p * rsq(ctx.dim))


def _time_derivative_factor(k, n):
    """
    With φ(t) = t^{-n/2} exp(-s/4t) and u = 1/t, ∂_t^k φ = P_k(u, s)·φ where P_0 = 1 and
    P_{k+1} = -u²·∂_u P_k + P_k·(-(n/2)·u + (1/4)·u²·s).
    """
    u, s = variables(2)
    factor = Polynomial(2, {(0, 0): 1})
    multiplier = u * Fraction(-n, 2) + u * u * s * Fraction(1, 4)
    for _ in range(k):
        factor = -(u * u) * factor.derivative(0) + factor * multiplier
    return factor


def dt_f0(ctx, k):
    """
    ∂_t^k f_t(0), differentiated analytically term by term.
    """
    if not 0 <= k <= MAX_TIME_DERIVATIVE:
        raise HeatError('dt_f0 supports derivative orders 0..{}, got {}'.format(MAX_TIME_DERIVATIVE, k))
    pts = ctx.lattice_points()
    factor = _time_derivative_factor(k, ctx.dim)
    u = 1.0 / ctx.t
    arguments = np.column_stack([np.full(len(pts.norms), u), pts.norms])
    values = factor.evaluate_many(arguments) * np.exp(-pts.norms / (4.0 * ctx.t))
    return ctx.prefactor * math.fsum(values)


def taylor_part(ctx, k):
    """
    f_k = Σ_{|I|=2k} ⟨x^I, f_t⟩ x^I / I!, a homogeneous polynomial of degree 2k with float coefficients.
    """
    if not 0 <= 2 * k <= MAX_TAYLOR_DEGREE:
        raise HeatError('taylor_part supports degrees 2k <= {}, got k={}'.format(MAX_TAYLOR_DEGREE, k))
    terms = {}
    for exponent in exponent_vectors(ctx.dim, 2 * k):
        factorial = 1
        for e in exponent:
            factorial *= math.factorial(e)
        terms[exponent] = heat_pair(ctx, monomial(exponent)) / factorial
    return Polynomial(ctx.dim, terms)


def taylor_polynomials(ctx, kmax):
    return [taylor_part(ctx, k) for k in range(kmax + 1)]


def c_invariant(ctx, ks):
    """
    c_{k1..km} = ∫_{S^{n-1}} f_{k1}···f_{km} dμ̄. Float Taylor coefficients are converted to the exact rationals
    they represent, so the sphere integration itself is exact.
    """
    ks = list(ks)
    if sum(2 * k for k in ks) > MAX_TAYLOR_DEGREE:
        raise HeatError('c_invariant supports total degree <= {}, got {}'.format(
            MAX_TAYLOR_DEGREE, sum(2 * k for k in ks)))
    parts = taylor_polynomials(ctx, max(ks, default=0))
    product = Polynomial(ctx.dim, {(0,) * ctx.dim: 1})
    for k in ks:
        if k < 0:
            raise HeatError('c_invariant needs non-negative orders, got {}'.format(ks))
        product = product * parts[k].map_coefficients(Fraction)
    return float(polynomial_sphere_integral(product, ctx.dim))


def c_pattern_coefficient(k, n):
    """
    c_k = c_pattern_coefficient(k, n) · ∂_t^k c_0. In dimension 2 this is 1 / (4^k (k!)²).
    """
    return sphere_alpha(k, n) * (-1) ** k


def datum_value(ctx, datum):
    """
    Σ_j c_j Π_i ⟨h_ij, f_t⟩.
    """
    if datum.nvars != ctx.dim:
        raise HeatError('The harmonic datum lives in dimension {} but the lattice has dimension {}'.format(
            datum.nvars, ctx.dim))
    total = []
    for term in datum.terms:
        value = float(term.coefficient)
        for factor in term.factors:
            value *= heat_pair(ctx, factor)
        total.append(value)
    return math.fsum(total)


def datum_magnitude(ctx, datum):
    """
    Σ_j |c_j| Π_i heat_pair_magnitude(h_ij), a bound for |datum_value(ctx, datum)|.
    """
    total = []
    for term in datum.terms:
        value = abs(float(term.coefficient))
        for factor in term.factors:
            value *= heat_pair_magnitude(ctx, factor)
        total.append(value)
    return math.fsum(total)


def theta_scaling_factor(ctx, datum):
    """
    (2t)^d (4πt)^{mn/2}: multiplying datum_value by this gives Θ_p at q = exp(-1/(4t)).
    """
    m = datum.factor_count
    return (2 * ctx.t) ** datum.degree * (4 * math.pi * ctx.t) ** (m * ctx.dim / 2.0)


def p11_value(ctx):
    """
    2n²·Σ_{i<j}⟨x_i x_j, f_t⟩² + Σ_i⟨n x_i² - r², f_t⟩².
    """
    if ctx.dim < 2:
        raise HeatError('p11 needs dimension >= 2, got {}'.format(ctx.dim))
    return datum_value(ctx, builtin_datum_p11(ctx.dim))


def p22_value(ctx):
    """
    ⟨x0⁴ - 6x0²x1² + x1⁴, f_t⟩² + 16⟨x0 x1 (x0² - x1²), f_t⟩². Dimension 2 only.
    """
    if ctx.dim != 2:
        raise HeatError('p22 is only defined in dimension 2, got {}'.format(ctx.dim))
    return datum_value(ctx, builtin_datum_p22())


def p22_split(ctx):
    """
    The three parts of 73728·c22 = p22 + s1 + s2 where s1 = 73728·c2² and
    s2 = 16(4⟨x0 x1, ∂_t f_t⟩² + ⟨x0² - x1², ∂_t f_t⟩²).

    @returns: (p22, s1, s2)
    """
    p22 = p22_value(ctx)
    c2 = c_invariant(ctx, [2])
    x0, x1 = variables(2)
    cross = heat_pair_dt(ctx, x0 * x1)
    difference = heat_pair_dt(ctx, x0 * x0 - x1 * x1)
    s1 = 73728 * c2 * c2
    s2 = 16 * (4 * cross * cross + difference * difference)
    return p22, s1, s2


def p11_sphere_constant(n):
    """
    2n³(n + 2): p11 = p11_sphere_constant(n) · (c11 - c1²).
    """
    return 2 * n ** 3 * (n + 2)