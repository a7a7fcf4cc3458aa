from optparse import OptionGroup, OptionParser, Values
from typing import List, Optional

from ..log import *
from ..utils import write_version_info
from ..version import __version__
from ._IO import *

# ------------------------------------
# Constants
# ------------------------------------
IO_OPTIONS = ['input', 'format']


# ------------------------------------
# Functions
# ------------------------------------
def add_semivar_options_group(optparser: OptionParser) -> None:
    """
    Add semivariance options group to optparser.
    :param optparser: OptionParser object.
    :return: None
    """
    group_semivar = OptionGroup(optparser, "Options for the stop-loss moment")
    group_semivar.add_option('-t', '--target', dest='target', type='float', help='Target value t.')
    group_semivar.add_option('-p',
                             '--power',
                             dest='power',
                             type='float',
                             default=2.0,
                             help='Power r of the stop-loss moment. Default is 2, the upper semivariance.')
    group_semivar.add_option('--allow-negative',
                             dest='allow_negative',
                             action='store_true',
                             default=False,
                             help='Accept negative observations.')
    optparser.add_option_group(group_semivar)


def validate_semivar_options(optparser: OptionParser, options: Values) -> None:
    """
    Validate semivariance options.
    :param optparser: OptionParser object.
    :param options: Options object.
    :return: None
    """
    if options.target is None:
        exit_with_help(optparser, 'Please provide a target value.')
    # a non-positive power is reported by the library as NonPositivePower


def write_semivar_options_memo(options: Values) -> None:
    info('            ----- stop-loss moment options -----     ')
    info(f'target:  {options.target}')
    info(f'power:  {options.power}')
    info(f'allow negative:  {options.allow_negative}')


def prepare_semivar_optparser(prog: Optional[str] = None) -> OptionParser:
    """
    Prepare optparser object. New options will be added in this function first.
    """
    usage = f'''USAGE: %prog <-i INPUT_CSV> <-t TARGET> [--power POWER] [--format text|json]'''
    description = 'semivar: empirical upper semivariance (stop-loss moment) above a target'

    # option processor
    optparser = OptionParser(prog=prog,
                             version=f'%prog {__version__}',
                             description=description,
                             usage=usage,
                             add_help_option=True)

    add_IO_options_group(optparser=optparser, io_options=IO_OPTIONS)
    add_semivar_options_group(optparser)
    add_log_options_group(optparser)

    return optparser


def opt_semivar_validate(optparser: OptionParser, argv: Optional[List[str]] = None) -> Values:
    """Validate options from a OptParser object.

    Ret: Validated options object.
    """

    (options, args) = optparser.parse_args(args=argv)

    validate_log_options(optparser, options)
    write_version_info()
    validate_io_options(optparser, options, IO_OPTIONS)
    validate_semivar_options(optparser, options)

    # print parameters to stderr
    info('------------------ RUN params memo ------------------ ')
    write_io_options_memo(options, IO_OPTIONS)
    write_semivar_options_memo(options)
    info('--------------- RUN params memo end ----------------- ')

    return options
