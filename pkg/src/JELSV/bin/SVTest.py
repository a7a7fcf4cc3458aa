#!/usr/bin/env python

import sys
from typing import List, Optional

from ..exceptions import JELSVError
from ..log import *
from ..optparser import EXIT_ERROR, opt_test_validate, prepare_test_optparser
from ..run.processes import load_parameters, sv_test

EXIT_FAIL_TO_REJECT = 0
EXIT_REJECT = 1


# ------------------------------------
# Main Function
# ------------------------------------
def main(argv: Optional[List[str]] = None, prog: Optional[str] = None) -> int:
    """
    Main function
    :param argv: command line arguments, sys.argv[1:] when None
    :param prog: program name shown in the usage line
    :return: exit code, 0 fail to reject, 1 reject, 2 error
    """

    # load parameters
    options = load_parameters(opt_validate_func=opt_test_validate,
                              prepare_optparser_func=prepare_test_optparser,
                              argv=argv,
                              prog=prog)

    # ----- test -----
    try:
        report = sv_test(options=options)
    except JELSVError as err:
        error(str(err))
        return EXIT_ERROR

    return EXIT_REJECT if report.reject else EXIT_FAIL_TO_REJECT


# ------------------------------------
# Program running
# ------------------------------------
if __name__ == '__main__':
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        sys.stderr.write("User interrupts me! ;-) See you ^.^!\n")
        sys.exit(0)
