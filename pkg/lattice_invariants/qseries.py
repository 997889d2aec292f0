"""
# qseries

Truncated q-expansions. A `QExpansion` holds exact `Fraction` coefficients a_m for 0 <= m <= M, where the
precision M means "correct through q^M inclusive". A `FloatSeries` is the parallel type for series whose
coefficients come from floating embeddings (spherical theta functions).

Both types are immutable once built. The arithmetic never claims more precision than the least precise
operand.
"""
import logging
import math
from collections import namedtuple
from fractions import Fraction
from numbers import Rational

logger = logging.getLogger(__name__)

RealValue = namedtuple('RealValue', ['value', 'tail_bound'])

# Inflation applied to the largest stored coefficient when estimating the tail of a truncated series
TAIL_INFLATION = 4


class QSeriesError(ValueError):
    pass


def _lcm(a, b):
    return a * b // math.gcd(a, b)


def _exact(value):
    if isinstance(value, bool) or not isinstance(value, (Rational, str)):
        raise QSeriesError('Coefficient "{}" of type {} is not an exact rational. Floating values are'
                           ' not allowed in a QExpansion'.format(value, type(value).__name__))
    return Fraction(value)


def _add_metadata(a, b):
    weight = a.weight if a.weight == b.weight else None
    level = a.level if a.level == b.level else None
    return weight, level


def _mul_metadata(a, b):
    weight = None
    level = None
    if a.weight is not None and b.weight is not None:
        weight = a.weight + b.weight
    if a.level is not None and b.level is not None:
        level = _lcm(a.level, b.level)
    return weight, level


class QExpansion(object):
    """
    Exact truncated power series in q.

    @param coefficients: A dict (or iterable of pairs) mapping exponent m to an exact rational. Exponents above
                         `precision` are discarded and zero coefficients are not stored.
    @param precision: M; coefficients are correct for all m <= M.
    @param weight: optional rational weight metadata.
    @param level: optional positive integer level metadata.
    """

    def __init__(self, coefficients, precision, weight=None, level=None):
        precision = int(precision)
        if precision < 0:
            raise QSeriesError('The precision of a q-expansion must be non-negative, got {}'.format(precision))

        terms = {}
        for m, a_m in dict(coefficients).items():
            m = int(m)
            if m < 0:
                raise QSeriesError('Negative exponent {} in a q-expansion'.format(m))
            if m > precision:
                continue
            a_m = _exact(a_m)
            if a_m:
                terms[m] = a_m

        if level is not None:
            level = int(level)
            if level < 1:
                raise QSeriesError('The level must be a positive integer, got {}'.format(level))

        self._terms = terms
        self._precision = precision
        self._weight = None if weight is None else _exact(weight)
        self._level = level

    @property
    def precision(self):
        return self._precision

    @property
    def weight(self):
        return self._weight

    @property
    def level(self):
        return self._level

    def coefficient(self, m):
        if m < 0 or m > self._precision:
            raise QSeriesError('Coefficient of q^{} requested from a series known only through q^{}'.format(
                m, self._precision))
        return self._terms.get(m, Fraction(0))

    __getitem__ = coefficient

    def coefficients(self):
        """
        @returns: a list [a_0, a_1, ..., a_M] of Fractions (zeros included).
        """
        return [self._terms.get(m, Fraction(0)) for m in range(self._precision + 1)]

    def items(self):
        """
        @returns: the (m, a_m) pairs with a_m != 0, in ascending order of m.
        """
        return sorted(self._terms.items())

    def is_zero(self):
        return not self._terms

    def with_metadata(self, weight=None, level=None):
        return QExpansion(self._terms, self._precision, weight=weight, level=level)

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        return self._precision == other._precision and self._terms == other._terms

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self._precision, frozenset(self._terms.items())))

    def __add__(self, other):
        return qs_add(self, other)

    def __sub__(self, other):
        return qs_add(self, qs_scale(other, -1))

    def __neg__(self):
        return qs_scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, QExpansion):
            return qs_mul(self, other)
        return qs_scale(self, other)

    __rmul__ = __mul__

    def __repr__(self):
        body = ' + '.join('{}*q^{}'.format(a_m, m) for m, a_m in self.items()) or '0'
        return 'QExpansion({}, M={})'.format(body, self._precision)


def qs_add(a, b):
    precision = min(a.precision, b.precision)
    terms = {}
    for series in (a, b):
        for m, a_m in series.items():
            if m <= precision:
                terms[m] = terms.get(m, 0) + a_m
    weight, level = _add_metadata(a, b)
    return QExpansion(terms, precision, weight=weight, level=level)


def qs_mul(a, b):
    """
    Cauchy product truncated at min(a.M, b.M). Weights add and levels combine by lcm when both are present.
    """
    precision = min(a.precision, b.precision)
    terms = {}
    b_items = b.items()
    for m1, c1 in a.items():
        if m1 > precision:
            break
        for m2, c2 in b_items:
            m = m1 + m2
            if m > precision:
                break
            terms[m] = terms.get(m, 0) + c1 * c2
    weight, level = _mul_metadata(a, b)
    return QExpansion(terms, precision, weight=weight, level=level)


def qs_scale(a, c):
    c = _exact(c)
    return QExpansion({m: c * a_m for m, a_m in a.items()}, a.precision, weight=a.weight, level=a.level)


def qs_eval_real(a, x):
    """
    Evaluates the truncated series at a real point 0 < x < 1.

    The reported tail bound is x^(M+1) * C / (1 - x) where C is the largest stored |a_m| inflated by
    TAIL_INFLATION. This is a heuristic estimate, not a rigorous bound.

    @returns: a RealValue(value, tail_bound) namedtuple.
    """
    x = float(x)
    if not (0.0 < x < 1.0):
        raise QSeriesError('A q-expansion can only be evaluated at a real point 0 < x < 1, got {}'.format(x))

    value = math.fsum(float(a_m) * x ** m for m, a_m in a.items())
    largest = max((abs(a_m) for _, a_m in a.items()), default=Fraction(0))
    tail_bound = x ** (a.precision + 1) * TAIL_INFLATION * float(largest) / (1.0 - x)
    return RealValue(value, tail_bound)


def qs_truncate(a, precision):
    if precision > a.precision:
        raise QSeriesError('Cannot raise the precision of a series from {} to {}'.format(a.precision, precision))
    return QExpansion(dict(a.items()), precision, weight=a.weight, level=a.level)


def qs_first_difference(a, b):
    """
    @returns: the smallest exponent m <= min(a.M, b.M) where the coefficients differ, or None when the two
              series agree through their common precision.
    """
    for m in range(min(a.precision, b.precision) + 1):
        if a.coefficient(m) != b.coefficient(m):
            return m
    return None


def qs_valuation(a):
    items = a.items()
    if not items:
        return None
    return items[0][0]


def qs_divisible_by(a, d):
    d = _exact(d)
    for _, a_m in a.items():
        quotient = a_m / d
        if quotient.denominator != 1:
            return False
    return True


def _format_rational(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return '{}/{}'.format(value.numerator, value.denominator)


def _metadata_lines(series):
    lines = []
    if series.weight is not None:
        lines.append('weight {}'.format(_format_rational(series.weight)))
    if series.level is not None:
        lines.append('level {}'.format(series.level))
    return lines


def qs_format(a):
    """
    Renders the exact text format: optional `weight w` and `level N` lines, one `precision M` line, then one
    `m a_m` line per nonzero coefficient in ascending m.
    """
    lines = _metadata_lines(a)
    lines.append('precision {}'.format(a.precision))
    lines.extend('{} {}'.format(m, _format_rational(a_m)) for m, a_m in a.items())
    return '\n'.join(lines) + '\n'


def qs_parse(text):
    weight = None
    level = None
    precision = None
    terms = {}
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split('#', 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise QSeriesError('Line {} of the q-expansion text is malformed: "{}"'.format(line_no, raw_line))
        key, value = fields
        try:
            if key == 'weight':
                weight = Fraction(value)
            elif key == 'level':
                level = int(value)
            elif key == 'precision':
                precision = int(value)
            elif key == 'float':
                raise QSeriesError('Float series cannot be parsed as an exact q-expansion')
            else:
                m = int(key)
                if m in terms:
                    raise QSeriesError('Exponent {} is listed twice (line {})'.format(m, line_no))
                terms[m] = Fraction(value)
        except (ValueError, ZeroDivisionError) as exp:
            if isinstance(exp, QSeriesError):
                raise
            raise QSeriesError('Line {} of the q-expansion text is malformed: "{}"'.format(line_no, raw_line))

    if precision is None:
        raise QSeriesError('The q-expansion text has no "precision" line')
    if any(m > precision for m in terms):
        raise QSeriesError('The q-expansion text lists an exponent above its precision {}'.format(precision))

    return QExpansion(terms, precision, weight=weight, level=level)


class FloatSeries(object):
    """
    Truncated power series with float coefficients. Dense storage: `coefficients[m]` for 0 <= m <= M.
    """

    def __init__(self, coefficients, precision, weight=None, level=None):
        precision = int(precision)
        if precision < 0:
            raise QSeriesError('The precision of a series must be non-negative, got {}'.format(precision))
        dense = [0.0] * (precision + 1)
        if isinstance(coefficients, dict):
            pairs = coefficients.items()
        else:
            pairs = enumerate(coefficients)
        for m, a_m in pairs:
            if 0 <= m <= precision:
                dense[m] = float(a_m)

        self._coefficients = tuple(dense)
        self._precision = precision
        self._weight = None if weight is None else Fraction(weight)
        self._level = None if level is None else int(level)

    @classmethod
    def from_exact(cls, series):
        return cls([float(a_m) for a_m in series.coefficients()], series.precision,
                   weight=series.weight, level=series.level)

    @property
    def precision(self):
        return self._precision

    @property
    def weight(self):
        return self._weight

    @property
    def level(self):
        return self._level

    def coefficient(self, m):
        if m < 0 or m > self._precision:
            raise QSeriesError('Coefficient of q^{} requested from a series known only through q^{}'.format(
                m, self._precision))
        return self._coefficients[m]

    __getitem__ = coefficient

    def coefficients(self):
        return list(self._coefficients)

    def with_metadata(self, weight=None, level=None):
        return FloatSeries(self._coefficients, self._precision, weight=weight, level=level)

    def __add__(self, other):
        precision = min(self._precision, other.precision)
        weight, level = _add_metadata(self, other)
        return FloatSeries([self[m] + other[m] for m in range(precision + 1)], precision,
                           weight=weight, level=level)

    def __mul__(self, other):
        if not isinstance(other, (FloatSeries, QExpansion)):
            return FloatSeries([c * float(other) for c in self._coefficients], self._precision,
                               weight=self._weight, level=self._level)
        if isinstance(other, QExpansion):
            other = FloatSeries.from_exact(other)
        precision = min(self._precision, other.precision)
        product = []
        for m in range(precision + 1):
            product.append(math.fsum(self[i] * other[m - i] for i in range(m + 1)))
        weight, level = _mul_metadata(self, other)
        return FloatSeries(product, precision, weight=weight, level=level)

    __rmul__ = __mul__

    def max_abs_difference(self, other):
        """
        @param other: a FloatSeries or a QExpansion.
        @returns: max_m |a_m - b_m| over the common precision.
        """
        precision = min(self._precision, other.precision)
        return max(abs(self[m] - float(other[m])) for m in range(precision + 1))

    def eval_real(self, x):
        x = float(x)
        if not (0.0 < x < 1.0):
            raise QSeriesError('A series can only be evaluated at a real point 0 < x < 1, got {}'.format(x))
        value = math.fsum(a_m * x ** m for m, a_m in enumerate(self._coefficients))
        largest = max(abs(a_m) for a_m in self._coefficients)
        tail_bound = x ** (self._precision + 1) * TAIL_INFLATION * largest / (1.0 - x)
        return RealValue(value, tail_bound)

    def __repr__(self):
        return 'FloatSeries({}, M={})'.format(list(self._coefficients), self._precision)


def float_series_format(series):
    lines = ['float']
    lines.extend(_metadata_lines(series))
    lines.append('precision {}'.format(series.precision))
    lines.extend('{} {}'.format(m, '%.17g' % a_m) for m, a_m in enumerate(series.coefficients()))
    return '\n'.join(lines) + '\n'
