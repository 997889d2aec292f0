"""
# gram_lattice

A lattice is represented by the exact rational Gram matrix G of one of its bases. Everything here except
`embed` works in exact `Fraction` arithmetic:

* validation (square, symmetric, positive definite through an exact LDLᵀ decomposition),
* the integrality flag (integer diagonal, half-integer off-diagonal),
* Fincke-Pohst enumeration of all vectors below a norm bound,
* level and discriminant.

`embed` is the only floating point operation. It returns the upper triangular Cholesky factor S with
SᵀS = G, which is what the spherical theta functions need.
"""
import logging
import math
from collections import namedtuple
from fractions import Fraction
from numbers import Rational

import numpy as np

logger = logging.getLogger(__name__)

LatticeVector = namedtuple('LatticeVector', ['coords'])
ShortVector = namedtuple('ShortVector', ['vector', 'norm'])
LevelAndDiscriminant = namedtuple('LevelAndDiscriminant', ['level', 'discriminant'])

EMBEDDING_RELATIVE_TOLERANCE = 1e-12


class LatticeError(ValueError):
    """
    `code` is one of: not-square, not-symmetric, not-positive-definite, not-integral, parse-error,
    embedding-failed, dimension-mismatch.
    """

    def __init__(self, code, message):
        super(LatticeError, self).__init__(message)
        self.code = code


def _to_fraction(value):
    if isinstance(value, bool) or not isinstance(value, (Rational, str)):
        raise LatticeError('parse-error', 'Gram entry "{}" is not an exact rational'.format(value))
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise LatticeError('parse-error', 'Gram entry "{}" is not a valid rational'.format(value))


def _coords_of(vector):
    if isinstance(vector, LatticeVector):
        return vector.coords
    return tuple(vector)


def _ldl(gram):
    """
    Exact LDLᵀ decomposition: G = L·diag(D)·Lᵀ with L unit lower triangular.

    @returns: (L, D) or None when some D_j <= 0 (G is not positive definite).
    """
    n = len(gram)
    lower = [[Fraction(0)] * n for _ in range(n)]
    diag = [Fraction(0)] * n
    for j in range(n):
        d_j = gram[j][j] - sum(lower[j][k] ** 2 * diag[k] for k in range(j))
        if d_j <= 0:
            return None
        diag[j] = d_j
        lower[j][j] = Fraction(1)
        for i in range(j + 1, n):
            lower[i][j] = (gram[i][j] - sum(lower[i][k] * lower[j][k] * diag[k] for k in range(j))) / d_j
    return lower, diag


def _inverse(matrix):
    n = len(matrix)
    work = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if work[r][col] != 0)
        work[col], work[pivot] = work[pivot], work[col]
        pivot_value = work[col][col]
        work[col] = [v / pivot_value for v in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
    return [row[n:] for row in work]


def _lcm(a, b):
    return a * b // math.gcd(a, b)


class GramLattice(object):
    """
    Validated lattice. Build instances with `from_gram` or `read_gram_file`.
    """

    def __init__(self, gram, lower, diag):
        self._gram = tuple(tuple(row) for row in gram)
        self._lower = lower
        self._diag = diag
        self._minimum = None
        self.dim = len(gram)
        self.is_integral = all(
            (gram[i][j] * (1 if i == j else 2)).denominator == 1
            for i in range(self.dim) for j in range(self.dim)
        )

    @property
    def gram(self):
        return self._gram

    def gram_as_float(self):
        return np.array([[float(v) for v in row] for row in self._gram])

    def determinant(self):
        result = Fraction(1)
        for d_j in self._diag:
            result *= d_j
        return result

    def require_integral(self, purpose):
        if not self.is_integral:
            raise LatticeError('not-integral', 'The lattice must be integral (integer diagonal and half-integer'
                                               ' off-diagonal Gram entries) for {}'.format(purpose))

    def __eq__(self, other):
        if not isinstance(other, GramLattice):
            return NotImplemented
        return self._gram == other._gram

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self._gram)

    def __repr__(self):
        return 'GramLattice({})'.format(format_gram(self).strip().replace('\n', '; '))


def from_gram(matrix):
    rows = [list(row) for row in matrix]
    n = len(rows)
    if n < 1 or any(len(row) != n for row in rows):
        raise LatticeError('not-square', 'The Gram matrix must be square and non-empty, got row lengths {}'.format(
            [len(row) for row in rows]))

    gram = [[_to_fraction(v) for v in row] for row in rows]
    for i in range(n):
        for j in range(i + 1, n):
            if gram[i][j] != gram[j][i]:
                raise LatticeError('not-symmetric', 'The Gram matrix is not symmetric: entry ({0},{1}) = {2} but'
                                                    ' entry ({1},{0}) = {3}'.format(i, j, gram[i][j], gram[j][i]))

    decomposition = _ldl(gram)
    if decomposition is None:
        raise LatticeError('not-positive-definite', 'The Gram matrix is not positive definite')

    lattice = GramLattice(gram, *decomposition)
    logger.debug('Validated a Gram matrix of dimension {} (integral={})'.format(n, lattice.is_integral))
    return lattice


def inner(lattice, u, v):
    u = _coords_of(u)
    v = _coords_of(v)
    gram = lattice.gram
    return Fraction(sum(u[i] * gram[i][j] * v[j]
                        for i in range(lattice.dim) for j in range(lattice.dim) if u[i] and v[j]))


def norm(lattice, u):
    return Fraction(inner(lattice, u, u))


def short_vectors(lattice, bound):
    """
    Every nonzero lattice vector with norm² <= bound, both signs included, sorted by (norm², coords).

    Fincke-Pohst depth first search on xᵀGx = Σ_j D_j (x_j + Σ_{i>j} L_ij x_i)², starting from the last
    coordinate. All bound checks are exact.

    @returns: a list of ShortVector(vector=LatticeVector, norm=Fraction).
    """
    bound = Fraction(bound)
    if bound < 0:
        raise LatticeError('parse-error', 'The norm bound must be non-negative, got {}'.format(bound))

    n = lattice.dim
    lower = lattice._lower
    diag = lattice._diag
    coords = [0] * n
    found = []

    def search(j, remaining):
        if j < 0:
            if any(coords):
                found.append(ShortVector(LatticeVector(tuple(coords)), bound - remaining))
            return
        centre = -sum(lower[i][j] * coords[i] for i in range(j + 1, n))
        start = math.floor(centre)

        x = start
        while True:
            used = diag[j] * (x - centre) ** 2
            if used > remaining:
                break
            coords[j] = x
            search(j - 1, remaining - used)
            x -= 1

        x = start + 1
        while True:
            used = diag[j] * (x - centre) ** 2
            if used > remaining:
                break
            coords[j] = x
            search(j - 1, remaining - used)
            x += 1

        coords[j] = 0

    search(n - 1, bound)
    found.sort(key=lambda sv: (sv.norm, sv.vector.coords))
    logger.debug('Enumerated {} vectors of norm² <= {} in dimension {}'.format(len(found), bound, n))
    return found


def minimum(lattice):
    """
    Smallest nonzero norm². The smallest diagonal Gram entry is an upper bound, since it is the norm of a
    basis vector.
    """
    if lattice._minimum is None:
        bound = min(lattice.gram[i][i] for i in range(lattice.dim))
        lattice._minimum = short_vectors(lattice, bound)[0].norm
    return lattice._minimum


def level_and_discriminant(lattice):
    """
    With M = 2G (an even integral matrix for an integral lattice), the level N is the smallest N > 0 such that
    N·M⁻¹ is integral with even diagonal, and the discriminant is D = (-1)^(n//2) det(M).
    """
    lattice.require_integral('computing the level and discriminant')
    n = lattice.dim
    doubled = [[2 * v for v in row] for row in lattice.gram]
    inverse = _inverse(doubled)

    level = 1
    for i in range(n):
        for j in range(n):
            entry = inverse[i][j] / 2 if i == j else inverse[i][j]
            level = _lcm(level, entry.denominator)

    determinant = lattice.determinant() * 2 ** n
    discriminant = (-1) ** (n // 2) * int(determinant)
    return LevelAndDiscriminant(level, discriminant)


class Embedding(object):
    """
    A real matrix S whose columns embed the basis in Euclidean space, so that SᵀS ≈ G.

    `embed` always produces the upper triangular Cholesky factor. `rotated` and `from_matrix` produce general
    factors, which is what re-embedding a lattice by an orthogonal map gives.
    """

    def __init__(self, s, lattice, tolerance):
        self.s = np.array(s, dtype=float)
        self.lattice = lattice
        self.tolerance = tolerance
        if self.s.shape != (lattice.dim, lattice.dim):
            raise LatticeError('dimension-mismatch', 'An embedding of a {0}-dimensional lattice must be {0}x{0},'
                                                     ' got shape {1}'.format(lattice.dim, self.s.shape))
        residual = self.residual()
        if not residual <= tolerance:
            raise LatticeError('embedding-failed', 'The embedding residual max|SᵀS - G| = {} exceeds the'
                                                   ' tolerance {}'.format(residual, tolerance))

    def residual(self):
        return float(np.max(np.abs(self.s.T @ self.s - self.lattice.gram_as_float())))

    def embedded(self, coords):
        return self.s @ np.asarray(_coords_of(coords), dtype=float)

    def embedded_many(self, coord_rows):
        """
        @param coord_rows: array-like of shape (V, n) holding lattice coordinates.
        @returns: array of shape (V, n) holding the embedded vectors S·x.
        """
        coord_rows = np.asarray(coord_rows, dtype=float).reshape(-1, self.lattice.dim)
        return coord_rows @ self.s.T

    def rotated(self, orthogonal):
        orthogonal = np.asarray(orthogonal, dtype=float)
        scale = max(1.0, float(np.max(np.abs(self.lattice.gram_as_float()))))
        return Embedding(orthogonal @ self.s, self.lattice, max(self.tolerance, 1e-10 * scale))

    def is_upper_triangular(self):
        return bool(np.array_equal(self.s, np.triu(self.s)))


def _default_tolerance(lattice):
    return EMBEDDING_RELATIVE_TOLERANCE * float(max(abs(v) for row in lattice.gram for v in row))


def embed(lattice):
    gram = lattice.gram_as_float()
    try:
        lower = np.linalg.cholesky(gram)
    except np.linalg.LinAlgError as exp:
        raise LatticeError('embedding-failed', 'Cholesky factorisation failed: {}'.format(exp))
    return Embedding(lower.T, lattice, _default_tolerance(lattice))


def from_matrix(s, lattice, tolerance=None):
    """
    Wraps a user supplied factor S (for example a published one) after checking SᵀS ≈ G.
    """
    if tolerance is None:
        tolerance = _default_tolerance(lattice)
    return Embedding(s, lattice, tolerance)


def _format_rational(value):
    if value.denominator == 1:
        return str(value.numerator)
    return '{}/{}'.format(value.numerator, value.denominator)


def format_gram(lattice):
    lines = ['dim {}'.format(lattice.dim)]
    lines.extend(' '.join(_format_rational(v) for v in row) for row in lattice.gram)
    return '\n'.join(lines) + '\n'


def parse_gram(text, source='<string>'):
    """
    Gram text format: a `dim n` line, then n lines of n rationals (`p/q` or integers). `#` starts a comment.
    """
    lines = []
    for raw_line in text.splitlines():
        line = raw_line.split('#', 1)[0].strip()
        if line:
            lines.append(line)

    if not lines:
        raise LatticeError('parse-error', 'The Gram file "{}" is empty'.format(source))
    header = lines[0].split()
    if len(header) != 2 or header[0] != 'dim':
        raise LatticeError('parse-error', 'The Gram file "{}" must start with a "dim n" line, found "{}"'.format(
            source, lines[0]))
    try:
        n = int(header[1])
    except ValueError:
        raise LatticeError('parse-error', 'Invalid dimension "{}" in "{}"'.format(header[1], source))
    if n < 1:
        raise LatticeError('parse-error', 'The dimension in "{}" must be positive, got {}'.format(source, n))

    rows = [line.split() for line in lines[1:]]
    if len(rows) != n:
        raise LatticeError('not-square', 'The Gram file "{}" declares dim {} but has {} matrix rows'.format(
            source, n, len(rows)))
    return from_gram(rows)


def read_gram_file(gram_path):
    with open(gram_path, 'r') as gram_file:
        return parse_gram(gram_file.read(), source=gram_path)
