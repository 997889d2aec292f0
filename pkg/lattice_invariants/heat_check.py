"""
# heat_check

Numerical checks of the identities which tie the heat flux f_t of a lattice to its theta functions. Each
`check_*` method of `HeatIdentityChecker` evaluates one family of identities, appends one `IdentityRow` per
identity to the checker's `HeatReport` and raises `ToleranceError` if any of them is out of tolerance.

`get_heat_check_steps` wraps the checks as Steps with a WARNING threshold, so that every family is reported
even when an earlier one fails.
"""
import logging
import math
from collections import namedtuple

from lattice_invariants.harmonic_datum import builtin_datum_p11, builtin_datum_p22, builtin_datum_trivial
from lattice_invariants.heat import (c_invariant, c_pattern_coefficient, datum_magnitude, datum_value, dt_f0,
                                     f_eval, harmonic_lattice_sum, heat_pair, heat_pair_magnitude, p11_sphere_constant,
                                     p11_value, p22_split, relative_error, theta_scaling_factor)
from lattice_invariants.main_stack import EXIT_TOLERANCE
from lattice_invariants.polynomial import constant, rsq, variables
from lattice_invariants.report_renderer import HeatReport
from lattice_invariants.steps import Step
from lattice_invariants.theta import theta_datum

logger = logging.getLogger(__name__)

DELTA_DT_ORDERS = (0, 1, 2, 3)
TAYLOR_PATTERN_ORDERS = (1, 2, 3)


class ToleranceError(Exception):
    exit_code = EXIT_TOLERANCE


class IdentityRow(namedtuple('IdentityRow', ['name', 'lhs', 'rhs', 'rel_error', 'tolerance'])):
    __slots__ = ()

    @property
    def passed(self):
        return self.rel_error <= self.tolerance


def identity_row(name, lhs, rhs, tolerance, scale=0.0):
    return IdentityRow(name, lhs, rhs, relative_error(lhs, rhs, scale), tolerance)


def harmonic_test_polynomials(n):
    """
    Homogeneous harmonic polynomials in x0, x1 of degrees 2, 2, 3, 4 and 4; just x0 in dimension 1.
    """
    if n == 1:
        return [variables(1)[0]]
    x = variables(n)
    x0, x1 = x[0], x[1]
    return [
        x0 * x1,
        x0 * x0 - x1 * x1,
        x0 ** 3 - 3 * x0 * x1 ** 2,
        x0 ** 4 - 6 * x0 ** 2 * x1 ** 2 + x1 ** 4,
        x0 * x1 * (x0 * x0 - x1 * x1),
    ]


class HeatIdentityChecker(object):
    """
    @param ctx: a HeatContext.
    @param label: names the lattice in the report.
    """

    def __init__(self, ctx, label=None):
        self.ctx = ctx
        self.report = HeatReport(label or repr(ctx.lattice), ctx.t, ctx.epsilon)

    def _record(self, rows):
        for row in rows:
            self.report.add_row(row)
            logger.debug('{}: lhs={!r} rhs={!r} rel_error={:.3e}'.format(row.name, row.lhs, row.rhs, row.rel_error))

        failed = [row for row in rows if not row.passed]
        if failed:
            raise ToleranceError('\n'.join(
                '{} is out of tolerance: relative error {:.3e} > {:.0e}'.format(
                    row.name, row.rel_error, row.tolerance) for row in failed))

        return '{} identities within tolerance: {}'.format(len(rows), ', '.join(row.name for row in rows))

    def check_delta_dt(self, **kwargs):
        # ⟨rsq^k, f_t⟩ = ∂_t^k f_t(0)
        radius = rsq(self.ctx.dim)
        rows = []
        for k in DELTA_DT_ORDERS:
            p = radius ** k if k else constant(1, self.ctx.dim)
            rows.append(identity_row(
                'pair(r^{}) = dt^{} f(0)'.format(2 * k, k),
                heat_pair(self.ctx, p), dt_f0(self.ctx, k), 1e-6, heat_pair_magnitude(self.ctx, p)))
        return self._record(rows)

    def check_harmonic_differentiation(self, **kwargs):
        # (2t)^d ⟨h, f_t⟩ = (4πt)^{-n/2} Σ h(γ) exp(-|γ|²/4t)
        rows = []
        for h in harmonic_test_polynomials(self.ctx.dim):
            lhs = (2 * self.ctx.t) ** h.degree * heat_pair(self.ctx, h)
            rhs = harmonic_lattice_sum(self.ctx, h)
            scale = (2 * self.ctx.t) ** h.degree * heat_pair_magnitude(self.ctx, h)
            rows.append(identity_row('harmonic {}'.format(h), lhs, rhs, 1e-7, scale))
        return self._record(rows)

    def check_taylor_pattern(self, **kwargs):
        # c_k = (-1)^k α_{2k} ∂_t^k c_0, with c_0 = f_t(0)
        rows = []
        for k in TAYLOR_PATTERN_ORDERS:
            tolerance = 1e-7 if k == 1 else 1e-6
            rhs = c_pattern_coefficient(k, self.ctx.dim) * dt_f0(self.ctx, k)
            scale = abs(c_pattern_coefficient(k, self.ctx.dim)) * heat_pair_magnitude(
                self.ctx, rsq(self.ctx.dim) ** k)
            rows.append(identity_row('c{} pattern'.format(k), c_invariant(self.ctx, [k]), float(rhs), tolerance,
                                     float(scale)))
        return self._record(rows)

    def check_p11_sphere(self, **kwargs):
        if self.ctx.dim < 2:
            return 'p11 is not defined in dimension 1; skipped'
        n = self.ctx.dim
        c11 = c_invariant(self.ctx, [1, 1])
        c1 = c_invariant(self.ctx, [1])
        constant_factor = p11_sphere_constant(n)
        # c11 and c1^2 nearly cancel, so their size bounds the rounding error of the difference
        scale = datum_magnitude(self.ctx, builtin_datum_p11(n)) + constant_factor * (abs(c11) + c1 * c1)
        row = identity_row(
            '{}(c11 - c1^2) = p11'.format(constant_factor),
            constant_factor * (c11 - c1 * c1), p11_value(self.ctx), 1e-8, scale)
        return self._record([row])

    def check_p22_decomposition(self, **kwargs):
        if self.ctx.dim != 2:
            return 'p22 is only defined in dimension 2; skipped'
        p22, s1, s2 = p22_split(self.ctx)
        c22 = c_invariant(self.ctx, [2, 2])
        scale = datum_magnitude(self.ctx, builtin_datum_p22()) + abs(s1) + abs(s2)
        row = identity_row('73728 c22 = p22 + s1 + s2', 73728 * c22, p22 + s1 + s2, 1e-7, scale)
        return self._record([row])

    def check_datum_scaling(self, **kwargs):
        # (2t)^d (4πt)^{mn/2} Σ_j c_j Π⟨h_ij, f_t⟩ = Θ_p(exp(-1/4t))
        lattice = self.ctx.lattice
        if not lattice.is_integral:
            return 'theta functions need an integral lattice; datum scaling skipped'

        data = [builtin_datum_trivial(self.ctx.dim)]
        if self.ctx.dim >= 2:
            data.append(builtin_datum_p11(self.ctx.dim))
        if self.ctx.dim == 2:
            data.append(builtin_datum_p22())

        precision = int(math.ceil(self.ctx.truncation_bound))
        rows = []
        for datum in data:
            factor = theta_scaling_factor(self.ctx, datum)
            lhs = factor * datum_value(self.ctx, datum)
            rhs = theta_datum(self.ctx.embedding, lattice, datum, precision).eval_real(self.ctx.nome).value
            rows.append(identity_row('theta scaling {}'.format(datum.name), lhs, rhs, 1e-7,
                                     factor * datum_magnitude(self.ctx, datum)))
        return self._record(rows)

    def check_truncation_doubling(self, **kwargs):
        origin = [0.0] * self.ctx.dim
        bound = self.ctx.truncation_bound
        row = identity_row('f(0) at B and 2B', f_eval(self.ctx, origin, bound), f_eval(self.ctx, origin, 2 * bound),
                           self.ctx.epsilon, 1.0)
        return self._record([row])


def get_heat_check_steps(checker):
    checks = [
        (checker.check_delta_dt, 'the time derivatives of f(0) against the pairings with powers of r^2'),
        (checker.check_harmonic_differentiation, 'the pairings with harmonic polynomials against the lattice sums'),
        (checker.check_taylor_pattern, 'the sphere integrals of the Taylor parts against the time derivatives'),
        (checker.check_p11_sphere, 'p11 against the sphere integrals c11 and c1'),
        (checker.check_p22_decomposition, 'the decomposition of c22'),
        (checker.check_datum_scaling, 'the heat pairings of harmonic data against their theta functions'),
        (checker.check_truncation_doubling, 'the truncation of the lattice sums'),
    ]

    return [
        Step(
            func,
            logging.WARNING,
            'Checking {}'.format(description),
            'Checked {}'.format(description),
            'Failed checking {}'.format(description),
        ) for func, description in checks
    ]
