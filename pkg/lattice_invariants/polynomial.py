"""
# polynomial

Sparse multivariate polynomials keyed by exponent tuples, plus the differential-operator machinery used by the
theta and heat engines.

Sign convention: `laplacian` is the NEGATIVE coordinate Laplacian, Δ = -Σ ∂²/∂x_i². Every formula in this
package (the harmonic decomposition constants, the Gaussian closed form and the sphere integration constants)
assumes it.

`rsq(n)` is the squared-radius polynomial Σ x_i². Nothing here ever takes a square root of it.
"""
import logging
import math
import re
from fractions import Fraction
from numbers import Integral, Rational

import numpy as np

logger = logging.getLogger(__name__)


class PolynomialError(ValueError):
    pass


def _normalise_coefficient(value):
    if isinstance(value, bool):
        raise PolynomialError('A boolean is not a valid polynomial coefficient')
    if isinstance(value, Integral):
        return Fraction(int(value))
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    raise PolynomialError('Unsupported polynomial coefficient "{}" of type {}'.format(value, type(value).__name__))


def _exponent_add(e1, e2):
    return tuple(a + b for a, b in zip(e1, e2))


def _factorial_of_exponent(exponent):
    result = 1
    for e in exponent:
        result *= math.factorial(e)
    return result


class Polynomial(object):
    """
    @param nvars: number of variables x0 .. x{n-1}.
    @param terms: a dict mapping exponent tuples of length `nvars` to coefficients. Integers and Fractions are
                  kept exact, floats are kept as floats. Zero coefficients are dropped.
    """

    def __init__(self, nvars, terms=None):
        nvars = int(nvars)
        if nvars < 1:
            raise PolynomialError('A polynomial needs at least one variable, got {}'.format(nvars))

        clean = {}
        for exponent, coef in (terms or {}).items():
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != nvars or any(e < 0 for e in exponent):
                raise PolynomialError('Exponent vector {} does not fit a polynomial in {} variables'.format(
                    exponent, nvars))
            coef = _normalise_coefficient(coef)
            if coef != 0:
                clean[exponent] = coef

        self._nvars = nvars
        self._terms = clean

    @property
    def nvars(self):
        return self._nvars

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), reverse=True)

    def coefficient(self, exponent):
        return self._terms.get(tuple(exponent), Fraction(0))

    def is_zero(self):
        return not self._terms

    @property
    def degree(self):
        if not self._terms:
            return float('-inf')
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self):
        return len(set(sum(e) for e in self._terms)) <= 1

    def is_exact(self):
        return all(isinstance(c, Fraction) for c in self._terms.values())

    def homogeneous_part(self, d):
        return Polynomial(self._nvars, {e: c for e, c in self._terms.items() if sum(e) == d})

    def homogeneous_parts(self):
        """
        @returns: a dict degree -> homogeneous Polynomial, containing only the nonzero parts.
        """
        parts = {}
        for exponent, coef in self._terms.items():
            parts.setdefault(sum(exponent), {})[exponent] = coef
        return {d: Polynomial(self._nvars, terms) for d, terms in parts.items()}

    def derivative(self, i):
        terms = {}
        for exponent, coef in self._terms.items():
            e_i = exponent[i]
            if e_i == 0:
                continue
            lowered = exponent[:i] + (e_i - 1,) + exponent[i + 1:]
            terms[lowered] = terms.get(lowered, 0) + coef * e_i
        return Polynomial(self._nvars, terms)

    def partial(self, exponent):
        """
        Applies ∂^I = Π ∂_i^{I_i}.
        """
        result = self
        for i, e_i in enumerate(exponent):
            for _ in range(e_i):
                result = result.derivative(i)
                if result.is_zero():
                    return result
        return result

    def apply_operator(self, operator):
        """
        @returns: operator(∂) applied to self, i.e. Σ_I q_I ∂^I self for operator = Σ q_I x^I.
        """
        _check_same_nvars(self, operator)
        result = Polynomial(self._nvars)
        for exponent, coef in operator._terms.items():
            result = result + self.partial(exponent) * coef
        return result

    def evaluate(self, point):
        if len(point) != self._nvars:
            raise PolynomialError('Cannot evaluate a polynomial in {} variables at a point of length {}'.format(
                self._nvars, len(point)))
        total = 0
        for exponent, coef in self._terms.items():
            term = coef
            for x_i, e_i in zip(point, exponent):
                if e_i:
                    term = term * x_i ** e_i
            total = total + term
        return total

    def evaluate_many(self, points):
        """
        Float evaluation at many points at once.

        @param points: array-like of shape (V, nvars).
        @returns: a numpy array of shape (V,).
        """
        points = np.asarray(points, dtype=float)
        if points.ndim != 2 or points.shape[1] != self._nvars:
            raise PolynomialError('Expected points of shape (V, {}), got {}'.format(self._nvars, points.shape))
        values = np.zeros(points.shape[0])
        for exponent, coef in self._terms.items():
            values += float(coef) * np.prod(points ** np.array(exponent), axis=1)
        return values

    def compose_linear(self, matrix):
        """
        @returns: the polynomial x -> self(matrix @ x). Used to pull a polynomial back along a rotation.
        """
        matrix = [list(row) for row in matrix]
        if len(matrix) != self._nvars or any(len(row) != self._nvars for row in matrix):
            raise PolynomialError('compose_linear needs a {0}x{0} matrix'.format(self._nvars))
        images = []
        for row in matrix:
            images.append(Polynomial(self._nvars, {
                _unit_exponent(j, self._nvars): row[j] for j in range(self._nvars) if row[j] != 0
            }))

        result = Polynomial(self._nvars)
        for exponent, coef in self._terms.items():
            term = constant(coef, self._nvars)
            for image, e_i in zip(images, exponent):
                if e_i:
                    term = term * image ** e_i
            result = result + term
        return result

    def map_coefficients(self, func):
        return Polynomial(self._nvars, {e: func(c) for e, c in self._terms.items()})

    def _promote(self, other):
        if isinstance(other, Polynomial):
            _check_same_nvars(self, other)
            return other
        return constant(other, self._nvars)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._nvars == other._nvars and self._terms == other._terms
        try:
            return self == constant(other, self._nvars)
        except PolynomialError:
            return NotImplemented

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self._nvars, frozenset(self._terms.items())))

    def __add__(self, other):
        other = self._promote(other)
        terms = dict(self._terms)
        for exponent, coef in other._terms.items():
            terms[exponent] = terms.get(exponent, 0) + coef
        return Polynomial(self._nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self._nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._promote(other))

    def __rsub__(self, other):
        return self._promote(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            coef = _normalise_coefficient(other)
            return Polynomial(self._nvars, {e: c * coef for e, c in self._terms.items()})
        _check_same_nvars(self, other)
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exponent = _exponent_add(e1, e2)
                terms[exponent] = terms.get(exponent, 0) + c1 * c2
        return Polynomial(self._nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, power):
        if not isinstance(power, Integral) or power < 0:
            raise PolynomialError('Only non-negative integer powers are supported, got {}'.format(power))
        result = constant(1, self._nvars)
        base = self
        while power:
            if power & 1:
                result = result * base
            power >>= 1
            if power:
                base = base * base
        return result

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return 'Polynomial({}, "{}")'.format(self._nvars, format_polynomial(self))


def _check_same_nvars(p, q):
    if p.nvars != q.nvars:
        raise PolynomialError('Variable-count mismatch: {} vs {} variables'.format(p.nvars, q.nvars))


def _unit_exponent(i, nvars):
    return tuple(1 if j == i else 0 for j in range(nvars))


def constant(value, nvars):
    return Polynomial(nvars, {(0,) * nvars: value})


def variable(i, nvars):
    return Polynomial(nvars, {_unit_exponent(i, nvars): 1})


def variables(nvars):
    return [variable(i, nvars) for i in range(nvars)]


def monomial(exponent, coef=1):
    exponent = tuple(exponent)
    return Polynomial(len(exponent), {exponent: coef})


def rsq(nvars):
    return Polynomial(nvars, {tuple(2 if j == i else 0 for j in range(nvars)): 1 for i in range(nvars)})


def exponent_vectors(nvars, degree):
    """
    Yields every exponent tuple of length `nvars` with total degree `degree`, in descending lexicographic order.
    """
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in exponent_vectors(nvars - 1, degree - first):
            yield (first,) + rest


def laplacian(p):
    """
    Δp = -Σ_i ∂²p/∂x_i².
    """
    result = Polynomial(p.nvars)
    for i in range(p.nvars):
        result = result - p.derivative(i).derivative(i)
    return result


def laplacian_power(p, k):
    for _ in range(k):
        if p.is_zero():
            break
        p = laplacian(p)
    return p


def pair(p, q):
    """
    ⟨p, q⟩ = p(∂) q evaluated at 0 = Σ_I p_I q_I I!.
    """
    _check_same_nvars(p, q)
    small, large = (p, q) if len(p.terms) <= len(q.terms) else (q, p)
    large_terms = large.terms
    total = 0
    for exponent, coef in small.items():
        other = large_terms.get(exponent)
        if other is not None:
            total = total + coef * other * _factorial_of_exponent(exponent)
    if isinstance(total, int):
        total = Fraction(total)
    return total


def is_harmonic(p):
    return laplacian(p).is_zero()


def _radial_constant(m, e, nvars):
    # Δ(rsq^m h) = _radial_constant(m, deg h) * rsq^(m-1) h for harmonic homogeneous h
    return -2 * m * (nvars + 2 * m + 2 * e - 2)


def harmonic_decompose(p):
    """
    Writes a homogeneous polynomial p of degree d uniquely as Σ_l rsq^l h_{d-2l} with every h harmonic and
    homogeneous of degree d - 2l.

    Δp is decomposed recursively; its component of index l-1 is _radial_constant(l, d-2l) * h_{d-2l}, which
    recovers every lower part, and the top harmonic part is what remains of p.

    @returns: a list of (l, h) pairs, ascending in l, omitting zero parts.
    """
    if not p.is_homogeneous():
        raise PolynomialError('harmonic_decompose needs a homogeneous polynomial, got "{}"'.format(p))
    if p.is_zero():
        return []

    d = p.degree
    lower = harmonic_decompose(laplacian(p)) if d >= 2 else []

    parts = []
    remainder = p
    radius = rsq(p.nvars)
    for l_minus_one, g in lower:
        l = l_minus_one + 1
        h = g * Fraction(1, _radial_constant(l, d - 2 * l, p.nvars))
        parts.append((l, h))
        remainder = remainder - radius ** l * h

    if not remainder.is_zero():
        parts.insert(0, (0, remainder))
    return parts


def gaussian_operator(p, a):
    """
    Closed form of p(∂) applied to a centred Gaussian: returns the polynomial Q with

        p(∂) exp((a/2)|x|²) = Q(x) exp((a/2)|x|²),

    where for each homogeneous part p_d, Q_d = a^d Σ_k (-1/(2a))^k / k! · Δ^k p_d.
    """
    if a == 0:
        raise PolynomialError('The Gaussian parameter a must be nonzero')
    if isinstance(a, Integral):
        a = Fraction(a)

    result = Polynomial(p.nvars)
    for d, part in sorted(p.homogeneous_parts().items()):
        step = -1 / (2 * a)
        factor = a ** d
        current = part
        k = 0
        while not current.is_zero():
            result = result + current * (factor * step ** k / math.factorial(k))
            current = laplacian(current)
            k += 1
    return result


def gaussian_apply(p, a, shift):
    """
    Value at x = 0 of p(∂) applied to x -> exp((a/2)|x - shift|²).
    """
    if len(shift) != p.nvars:
        raise PolynomialError('Shift of length {} does not match {} variables'.format(len(shift), p.nvars))
    q = gaussian_operator(p, a)
    negated = [-s for s in shift]
    norm_sq = sum(s * s for s in shift)
    return float(q.evaluate(negated)) * math.exp(float(a) / 2.0 * float(norm_sq))


_TERM_TOKEN = re.compile(r'-|[0-9]+(?:\.[0-9]+)?(?:/[0-9]+)?|x[0-9]+(?:\^[0-9]+)?')


def parse_polynomial(text, nvars):
    """
    Parses the text format `c x0^a x1^b ...` with terms joined by `+`. Coefficients are integers or `p/q`
    rationals and may carry a leading `-`; a missing coefficient means 1.
    """
    source = text.strip()
    if not source:
        raise PolynomialError('Empty polynomial text')
    # binary minus between terms becomes "+ -"
    source = re.sub(r'(?<=[0-9A-Za-z])\s*-', ' + -', source)

    terms = {}
    for raw_term in source.split('+'):
        term = raw_term.strip()
        if not term:
            raise PolynomialError('Malformed polynomial text "{}"'.format(text))
        tokens = _TERM_TOKEN.findall(term)
        if ''.join(tokens) != re.sub(r'[\s*]', '', term):
            raise PolynomialError('Malformed term "{}" in polynomial text "{}"'.format(term, text))

        coef = Fraction(1)
        exponent = [0] * nvars
        for token in tokens:
            if token == '-':
                coef = -coef
            elif token.startswith('x'):
                name, _, power = token.partition('^')
                index = int(name[1:])
                if index >= nvars:
                    raise PolynomialError('Variable {} in "{}" exceeds the {} available variables'.format(
                        name, text, nvars))
                exponent[index] += int(power) if power else 1
            else:
                coef *= Fraction(token)
        exponent = tuple(exponent)
        terms[exponent] = terms.get(exponent, 0) + coef

    return Polynomial(nvars, terms)


def _format_coefficient(coef):
    if isinstance(coef, Fraction):
        if coef.denominator == 1:
            return str(coef.numerator)
        return '{}/{}'.format(coef.numerator, coef.denominator)
    return '%.17g' % coef


def format_polynomial(p):
    if p.is_zero():
        return '0'
    rendered = []
    for exponent, coef in p.items():
        factors = []
        for i, e in enumerate(exponent):
            if e == 1:
                factors.append('x{}'.format(i))
            elif e > 1:
                factors.append('x{}^{}'.format(i, e))
        rendered.append(' '.join([_format_coefficient(coef)] + factors))
    return ' + '.join(rendered)
