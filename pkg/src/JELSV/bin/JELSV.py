#!/usr/bin/env python

import sys
from typing import Callable, Dict, List, Optional

from ..optparser import EXIT_ERROR
from ..version import __version__
from . import Describe, Semivar, Simulate, SVTest

COMMANDS: Dict[str, Callable[..., int]] = {
    'test': SVTest.main,
    'describe': Describe.main,
    'semivar': Semivar.main,
    'simulate': Simulate.main,
}

USAGE = f'''USAGE: JELSV <command> [options]

JELSV {__version__}: two-sample test of equal upper semivariance

commands:
  test        jackknife empirical likelihood and normal tests on two CSV samples
  describe    descriptive statistics of one CSV sample
  semivar     upper semivariance (stop-loss moment) above a target
  simulate    Monte Carlo type-I error and power from scenario configs

Run "JELSV <command> --help" for the options of a command.
'''


# ------------------------------------
# Main Function
# ------------------------------------
def main(argv: Optional[List[str]] = None) -> int:
    """
    Dispatch to the sub-command
    :param argv: command line arguments, sys.argv[1:] when None
    :return: exit code of the sub-command
    """

    argv = sys.argv[1:] if argv is None else argv
    if not argv or argv[0] in ('-h', '--help'):
        sys.stdout.write(USAGE)
        return 0 if argv else EXIT_ERROR
    if argv[0] == '--version':
        sys.stdout.write(f'JELSV {__version__}\n')
        return 0
    if argv[0] not in COMMANDS:
        sys.stderr.write(f'Unknown command: {argv[0]}\n\n{USAGE}')
        return EXIT_ERROR

    return COMMANDS[argv[0]](argv[1:], prog=f'JELSV {argv[0]}')


# ------------------------------------
# Program running
# ------------------------------------
if __name__ == '__main__':
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        sys.stderr.write("User interrupts me! ;-) See you ^.^!\n")
        sys.exit(0)
