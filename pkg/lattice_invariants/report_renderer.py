"""
Module `report_renderer`

Turns command results into the text written to stdout (or `--output`). Each kind of result has a subclass of
`ReportBase`, which collects the values a mustache template needs into `self.context_data`. Templates live
in `REPORT_TEMPLATES_DIR` and use the delimiters left=`<%` and right=`%>`, so that braces in the report text
are never read as tags.

Numbers are formatted before they reach the template and are inserted with `<%&name%>`, which disables HTML
escaping.
"""
import os

import chevron
from humanfriendly.tables import format_pretty_table

from lattice_invariants import REPORT_TEMPLATES_DIR


def render_template(template_text, context_data):
    return chevron.render(template_text, context_data, def_ldel='<%', def_rdel='%>')


class ReportBase(object):
    """
    Subclasses must:
    A) Override `_report_template_filename` with the name (without the `.mustache` extension) of a file in
       `REPORT_TEMPLATES_DIR`.
    B) Fill `self.context_data` with the tags used by that template.
    """
    _report_template_filename = None

    def __init__(self):
        self.context_data = {}
        self.template = self._get_report_template()

    def _get_report_template(self):
        m_path = os.path.join(REPORT_TEMPLATES_DIR, '{}.mustache'.format(self._report_template_filename))
        with open(m_path, 'r') as m_file:
            template = m_file.read()

        return template

    def get_report_text(self):
        return render_template(self.template, self.context_data)


class ShortVectorReport(ReportBase):
    """
    One line per vector: its norm, then its coordinates.
    """
    _report_template_filename = 'shortvec'

    def __init__(self, vectors):
        super(ShortVectorReport, self).__init__()
        self.context_data['vectors'] = [
            {'norm': _format_number(sv.norm), 'coords': ' '.join(str(c) for c in sv.vector.coords)}
            for sv in vectors
        ]


class LevelReport(ReportBase):
    _report_template_filename = 'level'

    def __init__(self, level_and_discriminant):
        super(LevelReport, self).__init__()
        self.context_data['level'] = level_and_discriminant.level
        self.context_data['discriminant'] = level_and_discriminant.discriminant


class ComparisonReport(ReportBase):
    """
    @param rows: ComparisonRow objects, see `invariant_compare`.
    """
    _report_template_filename = 'compare'

    def __init__(self, rows, precision):
        super(ComparisonReport, self).__init__()
        self.rows = list(rows)
        self.context_data['rows'] = [
            {'name': row.invariant, 'verdict': _comparison_verdict(row)} for row in self.rows
        ]
        self.context_data['precision'] = precision
        if self.distinguished:
            self.context_data['summary'] = 'distinguished by {}'.format(
                ', '.join(row.invariant for row in self.rows if row.first_difference is not None))
        else:
            self.context_data['summary'] = 'not distinguished through q^{}'.format(precision)

    @property
    def distinguished(self):
        return any(row.first_difference is not None for row in self.rows)


def _comparison_verdict(row):
    if row.first_difference is None:
        return 'EQUAL'
    return 'differs at q^{}'.format(row.first_difference)


class HeatReport(ReportBase):
    """
    Collects `IdentityRow` objects from `heat_check.HeatIdentityChecker` and renders them as a table.
    """
    _report_template_filename = 'heat-check'
    column_names = ['identity', 'lhs', 'rhs', 'rel. error', 'tolerance', 'status']

    def __init__(self, label, t, epsilon):
        super(HeatReport, self).__init__()
        self.rows = []
        self.context_data.update({
            'lattice': label,
            't': '{:g}'.format(t),
            'epsilon': '{:g}'.format(epsilon),
        })

    def add_row(self, row):
        self.rows.append(row)

    @property
    def failures(self):
        return [row for row in self.rows if not row.passed]

    def get_report_text(self):
        table_rows = [[
            row.name,
            '{:.12g}'.format(row.lhs),
            '{:.12g}'.format(row.rhs),
            '{:.2e}'.format(row.rel_error),
            '{:.0e}'.format(row.tolerance),
            'pass' if row.passed else 'FAIL'
        ] for row in self.rows]
        # column names go in as a plain row; passing column_names would add ANSI highlighting to the file output
        self.context_data.update({
            'table': format_pretty_table([self.column_names] + table_rows),
            'passed': len(self.rows) - len(self.failures),
            'failed': len(self.failures),
        })
        return super(HeatReport, self).get_report_text()


def _format_number(value):
    if getattr(value, 'denominator', 1) == 1:
        return str(int(value))
    return '{}/{}'.format(value.numerator, value.denominator)
