#!/usr/bin/env python

import sys
from typing import List, Optional

from ..exceptions import JELSVError
from ..log import *
from ..optparser import EXIT_ERROR, opt_simulate_validate, prepare_simulate_optparser
from ..run.processes import load_parameters, simulate


# ------------------------------------
# Main Function
# ------------------------------------
def main(argv: Optional[List[str]] = None, prog: Optional[str] = None) -> int:
    """
    Main function
    :param argv: command line arguments, sys.argv[1:] when None
    :param prog: program name shown in the usage line
    :return: exit code, 0 on success, 2 on error
    """

    # load parameters
    options = load_parameters(opt_validate_func=opt_simulate_validate,
                              prepare_optparser_func=prepare_simulate_optparser,
                              argv=argv,
                              prog=prog)

    # ----- simulate -----
    try:
        simulate(options=options)
    except JELSVError as err:
        error(str(err))
        return EXIT_ERROR

    return 0


# ------------------------------------
# Program running
# ------------------------------------
if __name__ == '__main__':
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        sys.stderr.write("User interrupts me! ;-) See you ^.^!\n")
        sys.exit(0)
