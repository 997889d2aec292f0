"""
Computes exact invariants by name and compares them between two lattices.

Invariant kinds are 'theta', 'theta11' and 'thetann:<n>' (dimension 2 only). Two lattices are distinguished
when any of their invariants differ at some q^m within the precision; agreement of every invariant is
inconclusive, not a proof of isometry.
"""
import logging
import re
from collections import namedtuple

from lattice_invariants.gram_lattice import LatticeError
from lattice_invariants.qseries import qs_first_difference
from lattice_invariants.theta import theta11, theta_nn, theta_series

logger = logging.getLogger(__name__)

PLANE_ORDERS = (1, 2, 3, 4)

ComparisonRow = namedtuple('ComparisonRow', ['invariant', 'first_difference'])

_THETANN_KIND = re.compile(r'^thetann:([1-9][0-9]*)$')


def parse_invariant_kind(kind):
    """
    @returns: (name, order) with order None except for thetann.
    @raises ValueError: for anything else.
    """
    if kind in ('theta', 'theta11'):
        return kind, None
    match = _THETANN_KIND.match(kind)
    if match:
        return 'thetann', int(match.group(1))
    raise ValueError('Unknown invariant "{}"; expected theta, theta11 or thetann:<n> with n >= 1'.format(kind))


def compute_invariant(lattice, kind, precision):
    name, order = parse_invariant_kind(kind)
    if name == 'theta':
        return theta_series(lattice, precision)
    if name == 'theta11':
        return theta11(lattice, precision)
    return theta_nn(lattice, order, precision)


def invariant_kinds_for(dim):
    kinds = ['theta', 'theta11']
    if dim == 2:
        kinds.extend('thetann:{}'.format(n) for n in PLANE_ORDERS)
    return kinds


def compare_lattices(lattice_a, lattice_b, precision):
    """
    @returns: a list of ComparisonRow, one per invariant, with `first_difference` the smallest m where the two
              q-expansions differ (None when they agree through q^precision).
    """
    if lattice_a.dim != lattice_b.dim:
        raise LatticeError('dimension-mismatch', 'Cannot compare lattices of dimensions {} and {}'.format(
            lattice_a.dim, lattice_b.dim))

    rows = []
    for kind in invariant_kinds_for(lattice_a.dim):
        first_difference = qs_first_difference(
            compute_invariant(lattice_a, kind, precision),
            compute_invariant(lattice_b, kind, precision))
        logger.debug('{}: first difference {}'.format(kind, first_difference))
        rows.append(ComparisonRow(kind, first_difference))
    return rows
