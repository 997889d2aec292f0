import logging
import traceback


class Step():
    """
    The atomic "unit of work" of a `latinv` run: reading a Gram file, computing one invariant, checking one
    family of heat identities, writing a result.

    The contract for functions
        'state' - An object of any kind. Either the return value of the previous Step or the `initial_state`
                  passed to `main_stack.process_stack`.

    :param func: A callable which does the work.
        * Must accept **kwargs. The current state is passed as `kwargs['state']`.
        * On success it returns the new state ("bare", not wrapped in a dict), or one or more Step objects
          which are pushed onto the stack (the first Step in a list runs first).
        * On failure it raises an exception. If the exception has an `exit_code` attribute that code is used
          when the failure ends the run.
    :param fail_threshold: How seriously an exception from `func` is taken.
        * `logging.ERROR` - the exception ends the run.
        * `logging.WARNING` - the failure is reported and the run continues with the unaltered state.
    :param running_msg: Shown (eg next to a spinner) whilst the step is running.
    :param complete_msg: Shown when the step completes successfully.
    :param fail_msg: Shown when the step fails.
    """

    def __init__(self, func, fail_threshold, running_msg, complete_msg, fail_msg):
        self.func = func
        self.fail_threshold = fail_threshold
        self.running_msg = running_msg
        self.complete_msg = complete_msg
        self.fail_msg = fail_msg

    def run(self, set_feedback, **kwargs):
        pass_back = kwargs.copy()

        try:
            result = self.func(**kwargs)
            pass_back['result'] = result
            set_feedback(logging.INFO, self.complete_msg, self, **pass_back)
            return result
        # The step runner is the outermost handler for the work it wraps, so any Exception is caught here
        except Exception as exp:
            pass_back['exp'] = exp
            pass_back['stack_trace'] = traceback.format_exc()
            set_feedback(self.fail_threshold, self.fail_msg, self, **pass_back)

            if self.fail_threshold >= logging.ERROR:
                raise exp

            return kwargs.get('state', None)

    def __repr__(self):
        return 'Step({!r})'.format(self.running_msg)
