"""
# main_stack

Every `latinv` command is run as a stack of `Step` objects (see steps.py). `process_stack()` works through the
stack; for each Step:

    * Its function is called with the current state.
    * The function may return:
        - One or more new Step objects, which are pushed onto the stack. Closures are very useful here.
        - An updated state object, which is passed to the next step.
    * The Step's "running", "success" and "failure" messages are shown on the terminal (stderr) or logged.

Standard output is reserved for the command's result, so that identical inputs produce byte-identical output.
All feedback goes to stderr.

If a Step with an ERROR threshold fails, the run ends with the exit code carried by the exception:
`exit_code` when the exception defines one, EXIT_VALIDATION for ValueError and IOError, otherwise
EXIT_FAILURE.
"""
import logging
import six
import sys
import traceback
from collections import deque

import humanfriendly.terminal as hft
import humanfriendly.terminal.spinners as spinners

from lattice_invariants.steps import Step

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 1
EXIT_INCONCLUSIVE = 2
EXIT_VALIDATION = 3
EXIT_TOLERANCE = 4

bright_white = hft.ansi_style(color='white', bright=True)
bright_green = hft.ansi_style(color='green', bright=True)
bright_red = hft.ansi_style(color='red', bright=True)
bright_yellow = hft.ansi_style(color='yellow', bright=True)
normal_white = hft.ansi_style(color='white', bright=False)

terminal_checkboxs = {
    logging.INFO: '{}[{}pass{}]{}'.format(normal_white, bright_green, normal_white, bright_white),
    logging.ERROR: '{}[{}fail{}]{}'.format(normal_white, bright_red, normal_white, bright_white),
    logging.WARNING: '{}[{}warn{}]{}'.format(normal_white, bright_yellow, normal_white, bright_white)
}


def exit_code_for(exp):
    if getattr(exp, 'exit_code', None) is not None:
        return exp.exit_code
    if isinstance(exp, (ValueError, IOError)):
        return EXIT_VALIDATION
    return EXIT_FAILURE


def parse_feedback(status, msg, step, **kwargs):
    """
    Called once per step execution. Shows a checkbox line on the terminal, or logs the message when not
    attached to one. Input problems (ValueError, IOError) are reported by message only; anything else also
    gets its stack trace.
    """
    the_msg = msg
    if status > logging.INFO:
        exp = kwargs['exp']
        error_str = '\n'.join(str(s) for s in exp.args if isinstance(s, six.string_types))
        the_msg = '{}\nerror message={}'.format(msg, error_str)
        if not isinstance(exp, (ValueError, IOError)):
            the_msg = '{}\n\n{}'.format(the_msg, kwargs['stack_trace'])

    if hft.connected_to_terminal(sys.stderr):
        hft.message('{} {} {}'.format(
            hft.ANSI_ERASE_LINE,
            terminal_checkboxs[status],
            the_msg)
        )
    else:
        logger.log(status, the_msg)


def _add_steps_from_state_to_stack(new_state, stack, old_state):
    """
    Checks whether a Step has returned one or more additional Steps. If so these are added to the top of the
    stack.

    :param new_state: The return value of the most recently called Step object.
    :param stack: The stack.
    :param old_state: The state value which was passed to the most recently called Step object.
    :returns: `old_state` if `new_state` contains Step objects, else `new_state`.
    """
    if isinstance(new_state, Step):
        stack.append(new_state)
        return old_state

    if isinstance(new_state, list) and new_state and all([isinstance(stp, Step) for stp in new_state]):
        new_state.reverse()
        stack.extend(new_state)
        return old_state

    return new_state


def process_stack(step_list, initial_state):
    """
    Executes the stack of `Step` objects.
    * If a step's `func` returns one or more Step objects these are added to the top of the stack and the
      state is passed unaltered to the next Step.
    * Any other return value (including None and other falsey values) becomes the state for the next Step.

    :param step_list: The initial steps which populate the stack.
    :param initial_state: Passed as the 'state' keyword arg to the first step's `func`.
    :returns: The return value of the final step's `func`.
    """
    hft.enable_ansi_support()
    n_state = initial_state
    step_list = list(reversed(step_list))
    stack = deque(step_list)

    try:
        while stack:
            # `n_state` = the state for the current iteration
            # `nplus_state` = the state for the next iteration
            step = stack.pop()
            kwargs = {'state': n_state}

            if hft.connected_to_terminal(sys.stderr):
                with spinners.AutomaticSpinner(step.running_msg, show_time=True):
                    nplus_state = step.run(parse_feedback, **kwargs)
            else:
                logger.info('Starting: {}'.format(step.running_msg))
                nplus_state = step.run(parse_feedback, **kwargs)

            n_state = _add_steps_from_state_to_stack(nplus_state, stack, n_state)

        return n_state
    except Exception as exp:
        pass_back = {
            'exp': exp,
            'stack_trace': traceback.format_exc()
        }
        parse_feedback(logging.ERROR, 'Unable to continue following the previous error', None, **pass_back)
        sys.exit(exit_code_for(exp))
