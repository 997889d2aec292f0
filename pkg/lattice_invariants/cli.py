import argparse
import logging
import math
import os
import sys
from fractions import Fraction

from lattice_invariants.gram_lattice import (LatticeError, embed, level_and_discriminant, read_gram_file,
                                             short_vectors)
from lattice_invariants.harmonic_datum import builtin_datum, load_datum_file
from lattice_invariants.heat import HeatContext
from lattice_invariants.heat_check import HeatIdentityChecker, get_heat_check_steps
from lattice_invariants.invariant_compare import compare_lattices, compute_invariant, parse_invariant_kind
from lattice_invariants.main_stack import EXIT_INCONCLUSIVE, EXIT_OK, EXIT_TOLERANCE, EXIT_USAGE, process_stack
from lattice_invariants.polynomial import parse_polynomial
from lattice_invariants.qseries import float_series_format, qs_format
from lattice_invariants.report_renderer import ComparisonReport, LevelReport, ShortVectorReport
from lattice_invariants.steps import Step
from lattice_invariants.theta import spherical_theta, theta_datum, theta_series

logger = logging.getLogger(__name__)

CMD_THETA = 'theta'
CMD_INVARIANT = 'invariant'
CMD_COMPARE = 'compare'
CMD_SHORTVEC = 'shortvec'
CMD_HEAT_CHECK = 'heat-check'
CMD_SPHERICAL = 'spherical'
CMD_DATUM = 'datum'
CMD_LEVEL = 'level'

DEFAULT_QPREC = 10
DEFAULT_EPSILON = 1e-12
MAX_HEAT_CHECK_DIM = 4


class UsageError(Exception):
    exit_code = EXIT_USAGE


class RunConfig(object):
    """
    Everything a single `latinv` run needs, independent of argparse.
    """

    def __init__(self, command, gram_paths, qprec=DEFAULT_QPREC, invariant_kind='theta', t=None,
                 epsilon=DEFAULT_EPSILON, output_path=None, bound=None, poly_text=None, builtin_datum=None,
                 datum_path=None):
        self.command = command
        self.gram_paths = list(gram_paths)
        self.qprec = qprec
        self.invariant_kind = invariant_kind
        self.t = t
        self.epsilon = epsilon
        self.output_path = output_path
        self.bound = bound
        self.poly_text = poly_text
        self.builtin_datum = builtin_datum
        self.datum_path = datum_path

    @classmethod
    def from_args(cls, args):
        config = cls(
            args.command,
            args.gram_paths,
            qprec=getattr(args, 'qprec', DEFAULT_QPREC),
            invariant_kind=getattr(args, 'kind', 'theta'),
            t=getattr(args, 't', None),
            epsilon=getattr(args, 'epsilon', DEFAULT_EPSILON),
            output_path=args.output_path,
            bound=getattr(args, 'bound', None),
            poly_text=getattr(args, 'poly', None),
            builtin_datum=getattr(args, 'builtin', None),
            datum_path=getattr(args, 'datum_file', None)
        )
        config.validate()
        return config

    def validate(self):
        if self.qprec is None or self.qprec < 0:
            raise UsageError('--qprec must be a non-negative integer, got {}'.format(self.qprec))

        if self.command == CMD_INVARIANT:
            try:
                parse_invariant_kind(self.invariant_kind)
            except ValueError as exp:
                raise UsageError(str(exp))

        if self.command == CMD_COMPARE and len(self.gram_paths) != 2:
            raise UsageError('compare needs exactly two Gram files, got {}'.format(len(self.gram_paths)))

        if self.command == CMD_HEAT_CHECK:
            if self.t is None:
                raise UsageError('heat-check needs a heat time --t')
            if not (self.t > 0 and math.isfinite(self.t)):
                raise UsageError('--t must be a positive number, got {}'.format(self.t))
            if not self.epsilon > 0:
                raise UsageError('--epsilon must be positive, got {}'.format(self.epsilon))

        if self.command == CMD_SHORTVEC and (self.bound is None or self.bound < 0):
            raise UsageError('shortvec needs a non-negative --bound, got {}'.format(self.bound))


def _emit(text, config):
    if config.output_path:
        with open(config.output_path, 'w') as output_file:
            output_file.write(text)
    else:
        sys.stdout.write(text)
    return text


def _read_lattice_step(gram_path):
    def read_lattice(**kwargs):
        return read_gram_file(gram_path)

    return Step(
        read_lattice,
        logging.ERROR,
        'Reading the Gram matrix file "{}"'.format(gram_path),
        'Read the Gram matrix file "{}"'.format(gram_path),
        'Failed to read the Gram matrix file "{}"'.format(gram_path)
    )


def _emit_step(config):
    def emit(**kwargs):
        return _emit(kwargs['state'], config)

    destination = config.output_path or 'standard output'
    return Step(
        emit,
        logging.ERROR,
        'Writing the result to {}'.format(destination),
        'Wrote the result to {}'.format(destination),
        'Failed to write the result to {}'.format(destination)
    )


def _single_lattice_run(config, compute, running_msg, complete_msg, fail_msg):
    """
    Read one Gram file, compute a text result from the lattice, write it.
    """
    def compute_text(**kwargs):
        return compute(kwargs['state'])

    steps = [
        _read_lattice_step(config.gram_paths[0]),
        Step(compute_text, logging.ERROR, running_msg, complete_msg, fail_msg),
        _emit_step(config)
    ]
    process_stack(steps, None)
    return EXIT_OK


def cmd_theta(config):
    return _single_lattice_run(
        config,
        lambda lattice: qs_format(theta_series(lattice, config.qprec)),
        'Counting lattice vectors through q^{}'.format(config.qprec),
        'Computed the theta series',
        'Failed to compute the theta series'
    )


def cmd_invariant(config):
    return _single_lattice_run(
        config,
        lambda lattice: qs_format(compute_invariant(lattice, config.invariant_kind, config.qprec)),
        'Computing {} through q^{}'.format(config.invariant_kind, config.qprec),
        'Computed {}'.format(config.invariant_kind),
        'Failed to compute {}'.format(config.invariant_kind)
    )


def cmd_shortvec(config):
    return _single_lattice_run(
        config,
        lambda lattice: ShortVectorReport(short_vectors(lattice, config.bound)).get_report_text(),
        'Enumerating the lattice vectors of norm at most {}'.format(config.bound),
        'Enumerated the short vectors',
        'Failed to enumerate the short vectors'
    )


def cmd_level(config):
    return _single_lattice_run(
        config,
        lambda lattice: LevelReport(level_and_discriminant(lattice)).get_report_text(),
        'Computing the level and discriminant',
        'Computed the level and discriminant',
        'Failed to compute the level and discriminant'
    )


def cmd_spherical(config):
    def compute(lattice):
        h = parse_polynomial(config.poly_text, lattice.dim)
        return float_series_format(spherical_theta(embed(lattice), lattice, h, config.qprec))

    return _single_lattice_run(
        config,
        compute,
        'Computing the spherical theta function of "{}"'.format(config.poly_text),
        'Computed the spherical theta function',
        'Failed to compute the spherical theta function'
    )


def cmd_datum(config):
    def compute(lattice):
        if config.datum_path:
            datum = load_datum_file(config.datum_path, lattice.dim)
        else:
            datum = builtin_datum(config.builtin_datum, lattice.dim)
        return float_series_format(theta_datum(embed(lattice), lattice, datum, config.qprec))

    datum_label = config.datum_path or config.builtin_datum
    return _single_lattice_run(
        config,
        compute,
        'Computing the theta function of the harmonic datum {}'.format(datum_label),
        'Computed the theta function of the harmonic datum',
        'Failed to compute the theta function of the harmonic datum'
    )


def cmd_compare(config):
    path_a, path_b = config.gram_paths

    def read_pair(**kwargs):
        return read_gram_file(path_a), read_gram_file(path_b)

    def compare(**kwargs):
        lattice_a, lattice_b = kwargs['state']
        return ComparisonReport(compare_lattices(lattice_a, lattice_b, config.qprec), config.qprec)

    steps = [
        Step(
            read_pair,
            logging.ERROR,
            'Reading the Gram matrix files "{}" and "{}"'.format(path_a, path_b),
            'Read both Gram matrix files',
            'Failed to read the Gram matrix files'
        ),
        Step(
            compare,
            logging.ERROR,
            'Comparing the invariants through q^{}'.format(config.qprec),
            'Compared the invariants',
            'Failed to compare the invariants'
        )
    ]
    report = process_stack(steps, None)
    _emit(report.get_report_text(), config)
    return EXIT_OK if report.distinguished else EXIT_INCONCLUSIVE


def cmd_heat_check(config):
    gram_path = config.gram_paths[0]
    found = {}

    def build_checks(**kwargs):
        lattice = kwargs['state']
        if lattice.dim > MAX_HEAT_CHECK_DIM:
            raise LatticeError('dimension-mismatch', 'heat-check supports dimensions up to {}, got {}'.format(
                MAX_HEAT_CHECK_DIM, lattice.dim))
        checker = HeatIdentityChecker(HeatContext(lattice, config.t, config.epsilon),
                                      os.path.basename(gram_path))
        found['checker'] = checker
        return get_heat_check_steps(checker)

    steps = [
        _read_lattice_step(gram_path),
        Step(
            build_checks,
            logging.ERROR,
            'Preparing the heat flux at t={}'.format(config.t),
            'Prepared the heat flux',
            'Failed to prepare the heat flux'
        )
    ]
    process_stack(steps, None)

    report = found['checker'].report
    _emit(report.get_report_text(), config)
    return EXIT_TOLERANCE if report.failures else EXIT_OK


class LatinvArgumentParser(argparse.ArgumentParser):
    """
    Usage errors exit with EXIT_USAGE, keeping exit code 2 for inconclusive comparisons.
    """

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, '{}: error: {}\n'.format(self.prog, message))


def is_valid_file(parser, arg):
    if not os.path.exists(arg):
        parser.error('The file "%s" does not exist!' % arg)
    else:
        return arg


def _rational(arg):
    try:
        return Fraction(arg)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError('"{}" is not a rational number'.format(arg))


all_commands = {
    CMD_THETA: ('Print the theta series of a lattice', cmd_theta),
    CMD_INVARIANT: ('Print one exact invariant (theta, theta11 or thetann:<n>) of a lattice', cmd_invariant),
    CMD_COMPARE: ('Compare the exact invariants of two lattices of the same dimension', cmd_compare),
    CMD_SHORTVEC: ('List the lattice vectors of norm at most --bound', cmd_shortvec),
    CMD_HEAT_CHECK: ('Check the heat flux identities of a lattice of dimension at most {}'.format(
        MAX_HEAT_CHECK_DIM), cmd_heat_check),
    CMD_SPHERICAL: ('Print the spherical theta function of a harmonic polynomial', cmd_spherical),
    CMD_DATUM: ('Print the theta function of a harmonic datum', cmd_datum),
    CMD_LEVEL: ('Print the level and discriminant of a lattice', cmd_level),
}


def _create_command_parser(command, subparsers):
    description, func = all_commands[command]
    parser = subparsers.add_parser(command, help=description)
    parser.description = description
    parser.set_defaults(func=func, command=command)

    nargs = 2 if command == CMD_COMPARE else 1
    parser.add_argument(
        'gram_paths',
        metavar='gram-file',
        nargs=nargs,
        help='A Gram matrix file: a "dim n" line, then n rows of n integers or rationals p/q.',
        type=lambda x: is_valid_file(parser, x)
    )
    parser.add_argument(
        '--output',
        dest='output_path',
        metavar='PATH',
        help='Write the result to PATH instead of standard output.'
    )
    return parser


def _add_qprec(parser):
    parser.add_argument(
        '--qprec',
        type=int,
        default=DEFAULT_QPREC,
        metavar='M',
        help='Compute q-expansions through q^M (default {}).'.format(DEFAULT_QPREC)
    )


def get_args():
    mainparser = LatinvArgumentParser(
        prog='latinv',
        description=(
            'Exact theta series, lattice invariants built from harmonic polynomials and numerical heat flux'
            ' checks for positive definite lattices.'
            ' Please look at the sub commands for more details'
        )
    )

    subparsers = mainparser.add_subparsers(title='available subcommands',
                                           description=(
                                               'Every subcommand reads one Gram matrix file (two for `compare`).'
                                               ' For more detailed information try `{} <subcommand> -h`'.format(
                                                   mainparser.prog)),
                                           help=None)

    for command in (CMD_THETA, CMD_COMPARE):
        _add_qprec(_create_command_parser(command, subparsers))

    prs_invariant = _create_command_parser(CMD_INVARIANT, subparsers)
    _add_qprec(prs_invariant)
    prs_invariant.add_argument(
        '--kind',
        default='theta',
        help='One of theta, theta11 or thetann:<n> (dimension 2 only). Default theta.'
    )

    prs_shortvec = _create_command_parser(CMD_SHORTVEC, subparsers)
    prs_shortvec.add_argument(
        '--bound',
        type=_rational,
        required=True,
        help='List vectors of norm at most this (integer or p/q).'
    )

    prs_heat = _create_command_parser(CMD_HEAT_CHECK, subparsers)
    prs_heat.add_argument('--t', type=float, required=True, help='The heat time t > 0.')
    prs_heat.add_argument(
        '--epsilon',
        type=float,
        default=DEFAULT_EPSILON,
        help='Target truncation error of the lattice sums (default {:g}).'.format(DEFAULT_EPSILON)
    )

    prs_spherical = _create_command_parser(CMD_SPHERICAL, subparsers)
    _add_qprec(prs_spherical)
    prs_spherical.add_argument(
        '--poly',
        required=True,
        help='A homogeneous harmonic polynomial in x0..x{n-1}, eg "x0^2 - x1^2" or "x0 x1".'
    )

    prs_datum = _create_command_parser(CMD_DATUM, subparsers)
    _add_qprec(prs_datum)
    datum_grp = prs_datum.add_mutually_exclusive_group(required=True)
    datum_grp.add_argument(
        '--builtin',
        help='One of p11, p11-plane, p22, nn:<n> or trivial.'
    )
    datum_grp.add_argument(
        '--datum-file',
        metavar='FILE',
        help='A YAML harmonic datum file.',
        type=lambda x: is_valid_file(prs_datum, x)
    )

    _create_command_parser(CMD_LEVEL, subparsers)

    return mainparser


def entry_point():
    mainparser = get_args()
    args = mainparser.parse_args()

    if not hasattr(args, 'func'):
        mainparser.print_usage(sys.stderr)
        sys.exit(EXIT_USAGE)

    try:
        config = RunConfig.from_args(args)
    except UsageError as exp:
        mainparser.error(str(exp))

    exit_code = args.func(config)
    if exit_code:
        sys.exit(exit_code)


if __name__ == '__main__':
    entry_point()
