"""
# harmonic_datum

A harmonic datum is a weighted sum of products of homogeneous harmonic polynomials,

    p = Σ_j c_j · h_{j,1} ⊗ ... ⊗ h_{j,m},

such that the associated combination Σ_j c_j Π_i Θ_{h_{j,i}} does not depend on the embedding of the lattice.
Every term has the same number of factors m and the same multiset of factor degrees, so the whole datum has a
well defined total degree d and weight nm/2 + d.

Data can be taken from the builtin constructors or loaded from a YAML file (see
`schemas/harmonic-datum-v0.1.schema` and `example/*.yml`).
"""
import logging
import math
from collections import namedtuple
from fractions import Fraction

import jsonschema

from lattice_invariants import _get_validator_for_config_schema
from lattice_invariants.data_schemas import parse_yaml
from lattice_invariants.polynomial import (Polynomial, PolynomialError, constant, is_harmonic, parse_polynomial,
                                           rsq, variables)

logger = logging.getLogger(__name__)

validate_against_datum_schema = _get_validator_for_config_schema('harmonic-datum-v0.1.schema')

DatumTerm = namedtuple('DatumTerm', ['coefficient', 'factors'])


class DatumError(ValueError):
    pass


class HarmonicDatum(object):
    """
    @param nvars: the lattice dimension n the polynomials live in.
    @param terms: an iterable of (coefficient, [Polynomial, ...]) pairs.
    @param name: optional label used in reports.
    """

    def __init__(self, nvars, terms, name=None):
        self.nvars = int(nvars)
        self.name = name
        self.terms = tuple(DatumTerm(Fraction(coef), tuple(factors)) for coef, factors in terms)
        self._validate()
        self.factor_count = len(self.terms[0].factors)
        self.degree = sum(factor.degree for factor in self.terms[0].factors)

    def _validate(self):
        if not self.terms:
            raise DatumError('A harmonic datum needs at least one term')

        profiles = set()
        for term_index, term in enumerate(self.terms):
            if not term.factors:
                raise DatumError('Term {} of the harmonic datum has no factors'.format(term_index))
            for factor in term.factors:
                if not isinstance(factor, Polynomial):
                    raise DatumError('Term {} holds a factor which is not a Polynomial: {!r}'.format(
                        term_index, factor))
                if factor.nvars != self.nvars:
                    raise DatumError('Factor "{}" has {} variables, the datum has {}'.format(
                        factor, factor.nvars, self.nvars))
                if factor.is_zero():
                    raise DatumError('Term {} holds a zero factor'.format(term_index))
                if not factor.is_homogeneous():
                    raise DatumError('Factor "{}" is not homogeneous'.format(factor))
                if not is_harmonic(factor):
                    raise DatumError('Factor "{}" is not harmonic'.format(factor))
            profiles.add(tuple(sorted(factor.degree for factor in term.factors)))

        if len(profiles) != 1:
            raise DatumError('The terms of a harmonic datum must share one degree profile, found {}'.format(
                sorted(profiles)))

    def distinct_factors(self):
        seen = []
        for term in self.terms:
            for factor in term.factors:
                if factor not in seen:
                    seen.append(factor)
        return seen

    def __repr__(self):
        return 'HarmonicDatum(name={!r}, n={}, m={}, d={}, terms={})'.format(
            self.name, self.nvars, self.factor_count, self.degree, len(self.terms))


def datum_weight(datum, n=None):
    """
    nm/2 + d.
    """
    if n is None:
        n = datum.nvars
    return Fraction(n * datum.factor_count, 2) + datum.degree


def builtin_datum_p11(n):
    """
    2n²·Σ_{i<j} (x_i x_j)⊗(x_i x_j) + Σ_i h_i⊗h_i with h_i = n·x_i² - Σ_j x_j².
    """
    if n < 2:
        raise DatumError('The p11 datum needs dimension n >= 2, got {}'.format(n))
    x = variables(n)
    radius = rsq(n)
    terms = []
    for i in range(n):
        for j in range(i + 1, n):
            cross = x[i] * x[j]
            terms.append((2 * n * n, [cross, cross]))
    for i in range(n):
        h_i = x[i] * x[i] * n - radius
        terms.append((1, [h_i, h_i]))
    return HarmonicDatum(n, terms, name='p11')


def builtin_datum_p11_plane():
    """
    The planar normalisation 4·(x0 x1)⊗(x0 x1) + (x0² - x1²)⊗(x0² - x1²), half of builtin_datum_p11(2).
    """
    x0, x1 = variables(2)
    cross = x0 * x1
    difference = x0 * x0 - x1 * x1
    return HarmonicDatum(2, [(4, [cross, cross]), (1, [difference, difference])], name='p11-plane')


def _real_and_imaginary_power(power):
    # Re and Im of (x0 + i x1)^power by the binomial theorem
    real_terms = {}
    imaginary_terms = {}
    for k in range(power + 1):
        coef = math.comb(power, k)
        exponent = (power - k, k)
        if k % 2 == 0:
            real_terms[exponent] = coef * (-1) ** (k // 2)
        else:
            imaginary_terms[exponent] = coef * (-1) ** ((k - 1) // 2)
    return Polynomial(2, real_terms), Polynomial(2, imaginary_terms)


def builtin_datum_nn(n):
    """
    h1⊗h1 + h2⊗h2 with h1 = Re((x0 + i x1)^{2n}) and h2 = Im((x0 + i x1)^{2n}). Dimension 2 only.
    """
    if n < 1:
        raise DatumError('The nn datum needs n >= 1, got {}'.format(n))
    h1, h2 = _real_and_imaginary_power(2 * n)
    return HarmonicDatum(2, [(1, [h1, h1]), (1, [h2, h2])], name='nn:{}'.format(n))


def builtin_datum_p22():
    x0, x1 = variables(2)
    quartic = x0 ** 4 - 6 * x0 ** 2 * x1 ** 2 + x1 ** 4
    twisted = x0 * x1 * (x0 ** 2 - x1 ** 2)
    return HarmonicDatum(2, [(1, [quartic, quartic]), (16, [twisted, twisted])], name='p22')


def builtin_datum_trivial(n):
    """
    The degree zero datum with the single factor 1; its theta function is the ordinary theta series.
    """
    return HarmonicDatum(n, [(1, [constant(1, n)])], name='trivial')


def builtin_datum(spec, n):
    """
    @param spec: one of 'p11', 'p11-plane', 'p22', 'trivial' or 'nn:<k>'.
    """
    if spec == 'p11':
        return builtin_datum_p11(n)
    if spec == 'trivial':
        return builtin_datum_trivial(n)
    if spec in ('p11-plane', 'p22') or spec.startswith('nn:'):
        if n != 2:
            raise DatumError('The builtin datum "{}" is only defined in dimension 2, the lattice has'
                             ' dimension {}'.format(spec, n))
        if spec == 'p11-plane':
            return builtin_datum_p11_plane()
        if spec == 'p22':
            return builtin_datum_p22()
        try:
            order = int(spec.split(':', 1)[1])
        except ValueError:
            raise DatumError('Invalid builtin datum "{}"; expected nn:<positive integer>'.format(spec))
        return builtin_datum_nn(order)
    raise DatumError('Unknown builtin datum "{}"'.format(spec))


def load_datum_file(datum_path, n=None):
    """
    Reads a YAML harmonic datum, checks it against the datum schema and then against the datum invariants.

    @param n: when given, the datum's declared dimension must equal it.
    """
    config = parse_yaml(datum_path)
    try:
        validate_against_datum_schema(config)
    except jsonschema.ValidationError as exp:
        raise DatumError('The harmonic datum file "{}" does not match its schema: {}'.format(
            datum_path, exp.message))

    dimension = config['dimension']
    if n is not None and dimension != n:
        raise DatumError('The harmonic datum file "{}" declares dimension {} but the lattice has dimension'
                         ' {}'.format(datum_path, dimension, n))

    terms = []
    try:
        for term in config['terms']:
            coefficient = Fraction(str(term['coefficient']))
            factors = [parse_polynomial(text, dimension) for text in term['factors']]
            terms.append((coefficient, factors))
    except (PolynomialError, ValueError, ZeroDivisionError) as exp:
        raise DatumError('The harmonic datum file "{}" could not be parsed: {}'.format(datum_path, exp))

    datum = HarmonicDatum(dimension, terms, name=config.get('name', datum_path))
    logger.debug('Loaded {!r} from "{}"'.format(datum, datum_path))
    return datum
