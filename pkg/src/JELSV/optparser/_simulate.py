from optparse import OptionGroup, OptionParser, Values
from typing import List, Optional

from ..log import *
from ..utils import write_version_info
from ..version import __version__
from ._IO import *

# ------------------------------------
# Constants
# ------------------------------------
IO_OPTIONS = ['config', 'out']


# ------------------------------------
# Functions
# ------------------------------------
def add_simulate_options_group(optparser: OptionParser) -> None:
    """
    Add simulation options group to optparser. Each option overrides the scenario file.
    :param optparser: OptionParser object.
    :return: None
    """
    group_simulate = OptionGroup(optparser, "Options overriding the scenario config")
    group_simulate.add_option('-s', '--seed', dest='seed', type='int', help='Master random seed.')
    group_simulate.add_option('-r', '--reps', dest='reps', type='int', help='Number of replications per sample size.')
    group_simulate.add_option('--n-cpu', dest='n_cpu', type='int', help='Number of worker processes.')
    group_simulate.add_option('--timing',
                              dest='timing',
                              action='store_true',
                              default=False,
                              help='Add the wall-clock seconds column to the CSV report.')
    optparser.add_option_group(group_simulate)


def validate_simulate_options(optparser: OptionParser, options: Values) -> None:
    """
    Validate simulation options.
    :param optparser: OptionParser object.
    :param options: Options object.
    :return: None
    """
    if options.seed is not None and options.seed < 0:
        exit_with_help(optparser, f'seed must be non-negative, got {options.seed}.')
    if options.reps is not None and options.reps < 1:
        exit_with_help(optparser, f'reps must be at least 1, got {options.reps}.')
    if options.n_cpu is not None and options.n_cpu < 1:
        exit_with_help(optparser, f'n-cpu must be at least 1, got {options.n_cpu}.')


def write_simulate_options_memo(options: Values) -> None:
    info('            -------- overrides -------              ')
    info(f'seed:  {options.seed if options.seed is not None else "from config"}')
    info(f'reps:  {options.reps if options.reps is not None else "from config"}')
    info(f'n cpu:  {options.n_cpu if options.n_cpu is not None else "from config"}')
    info(f'timing column:  {options.timing}')


def prepare_simulate_optparser(prog: Optional[str] = None) -> OptionParser:
    """
    Prepare optparser object. New options will be added in this function first.
    """
    usage = f'''USAGE: %prog <-c CONFIG_YAML> [-c CONFIG_YAML ...] [--seed N] [--reps N] [--n-cpu N] [--out CSV]
       [--timing]'''
    description = 'simulate: Monte Carlo type-I error and power of the semivariance tests'

    # option processor
    optparser = OptionParser(prog=prog,
                             version=f'%prog {__version__}',
                             description=description,
                             usage=usage,
                             add_help_option=True)

    add_IO_options_group(optparser=optparser, io_options=IO_OPTIONS)
    add_simulate_options_group(optparser)
    add_log_options_group(optparser)

    return optparser


def opt_simulate_validate(optparser: OptionParser, argv: Optional[List[str]] = None) -> Values:
    """Validate options from a OptParser object.

    Ret: Validated options object.
    """

    (options, args) = optparser.parse_args(args=argv)

    validate_log_options(optparser, options)
    write_version_info()
    validate_io_options(optparser, options, IO_OPTIONS)
    validate_simulate_options(optparser, options)

    # print parameters to stderr
    info('------------------ RUN params memo ------------------ ')
    write_io_options_memo(options, IO_OPTIONS)
    write_simulate_options_memo(options)
    info('--------------- RUN params memo end ----------------- ')

    return options
