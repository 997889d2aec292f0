import logging
from unittest import TestCase

from lattice_invariants.steps import Step
try:
    from unittest import mock
except ImportError:
    import mock


class TestSteps(TestCase):

    def _step(self, func, fail_threshold=logging.WARNING):
        return Step(
            func,
            fail_threshold,
            'TEST: Computing the theta series',
            'TEST: Computed the theta series',
            'TEST: Failed computing the theta series',
        )

    def test_success_reports_result(self):
        feedback = mock.Mock()
        step = self._step(lambda **kwargs: kwargs['state'] + 1)

        self.assertEqual(3, step.run(feedback, state=2))
        feedback.assert_called_once_with(logging.INFO, 'TEST: Computed the theta series', step, state=2, result=3)

    def test_warning_failure_returns_old_state(self):
        feedback = mock.Mock()

        def failing(**kwargs):
            raise ValueError('bad q-expansion')

        step = self._step(failing)
        self.assertEqual('old', step.run(feedback, state='old'))
        status, msg, fed_step = feedback.call_args[0]
        self.assertEqual(logging.WARNING, status)
        self.assertEqual('TEST: Failed computing the theta series', msg)
        self.assertIsInstance(feedback.call_args[1]['exp'], ValueError)
        self.assertIn('bad q-expansion', feedback.call_args[1]['stack_trace'])

    def test_error_failure_reraises(self):
        feedback = mock.Mock()

        def failing(**kwargs):
            raise IOError('no such Gram file')

        step = self._step(failing, logging.ERROR)
        with self.assertRaises(IOError):
            step.run(feedback, state=None)
        self.assertEqual(logging.ERROR, feedback.call_args[0][0])

    def test_repr(self):
        self.assertIn('Computing the theta series', repr(self._step(lambda **kwargs: None)))
