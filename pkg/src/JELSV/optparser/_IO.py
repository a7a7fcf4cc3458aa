import os
import sys
from optparse import OptionGroup, OptionParser, Values
from typing import List, Optional

from ..log import *

# exit code for usage and input errors, optparse uses the same
EXIT_ERROR = 2
INPUT_SUFFIXES = ('csv', 'csv.gz', 'txt', 'txt.gz')


def add_IO_options_group(optparser: OptionParser, io_options: Optional[List[str]]) -> None:
    """
    Add I/O options group to optparser.
    :param optparser: OptionParser object.
    :param io_options: List of I/O options.
    :return: None
    """
    if io_options is None:
        return
    # I/O options group
    group_io = OptionGroup(optparser, "IO")
    if 'x' in io_options:
        group_io.add_option('-x', '--x', dest='x', type='string', help='CSV file with the first sample.')
    if 'y' in io_options:
        group_io.add_option('-y', '--y', dest='y', type='string', help='CSV file with the second sample.')
    if 'input' in io_options:
        group_io.add_option('-i', '--input', dest='input', type='string', help='CSV file with one value per line.')
    if 'config' in io_options:
        group_io.add_option('-c',
                            '--config',
                            dest='config',
                            action='append',
                            type='string',
                            help='Scenario YAML file. Repeat to put several scenarios side by side in one table.')
    if 'out' in io_options:
        group_io.add_option('-o',
                            '--out',
                            dest='out',
                            type='string',
                            help='Output CSV report. The aligned table is written next to it with a .txt suffix.')
    if 'format' in io_options:
        group_io.add_option('--format',
                            dest='format',
                            type='choice',
                            choices=['text', 'json'],
                            default='text',
                            help='Report format on stdout: text or json. Default is text.')

    optparser.add_option_group(group_io)


def exit_with_help(optparser: OptionParser, message: str) -> None:
    error(message)
    optparser.print_help(sys.stderr)
    sys.exit(EXIT_ERROR)


def _validate_input_file(optparser: OptionParser, filename: Optional[str], name: str) -> None:
    if not filename:
        exit_with_help(optparser, f'Please provide the {name} file.')
    if not os.path.isfile(filename):  # type: ignore
        exit_with_help(optparser, f'The {name} file ({filename}) you given does not exist.')
    if not filename.endswith(INPUT_SUFFIXES):  # type: ignore
        warning(f'The {name} file ({filename}) does not look like a csv file, reading it as one value per line.')


def validate_io_options(optparser: OptionParser, options: Values, io_options: Optional[List[str]]) -> None:
    """Validate IO options from a OptParser object.
    :param optparser: OptionParser object.
    :param options: Options object.
    :param io_options: List of I/O options.
    :return: None
    """
    if io_options is None:
        return
    if 'x' in io_options:
        _validate_input_file(optparser, options.x, 'x sample')
    if 'y' in io_options:
        _validate_input_file(optparser, options.y, 'y sample')
    if 'input' in io_options:
        _validate_input_file(optparser, options.input, 'input')

    if 'config' in io_options:
        if not options.config:
            exit_with_help(optparser, 'Please provide at least one scenario config.')
        for config_file in options.config:
            if not os.path.isfile(config_file):
                exit_with_help(optparser, f'The config file ({config_file}) you given does not exist.')

    if 'out' in io_options and options.out:
        out_dir = os.path.dirname(options.out)
        if out_dir and not os.path.isdir(out_dir):
            info(f'Creating directory: {out_dir}')
            os.makedirs(out_dir, exist_ok=True)
        if os.path.isfile(options.out):
            warning(f'The output file ({options.out}) you given already exists. It will be overwritten.')


def write_io_options_memo(options: Values, io_options: Optional[List[str]]) -> None:
    """Write IO options to stderr.
    :param options: Options object.
    :param io_options: List of I/O options.
    :return: None
    """
    if io_options is None:
        return
    info('            -------- I/O options -------             ')
    if 'x' in io_options:
        info(f'x sample:  {options.x}')
    if 'y' in io_options:
        info(f'y sample:  {options.y}')
    if 'input' in io_options:
        info(f'input:  {options.input}')
    if 'config' in io_options:
        for config_file in options.config:
            info(f'scenario config:  {config_file}')
    if 'out' in io_options:
        info(f'output report:  {options.out if options.out else "stdout only"}')
    if 'format' in io_options:
        info(f'report format:  {options.format}')


def add_log_options_group(optparser: OptionParser) -> None:
    """
    Add logging options group to optparser.
    :param optparser: OptionParser object.
    :return: None
    """
    group_log = OptionGroup(optparser, "Logging")
    group_log.add_option('-q',
                         '--quiet',
                         dest='quiet',
                         action='store_true',
                         default=False,
                         help='Only write warnings and errors to stderr.')
    group_log.add_option('-v',
                         '--verbose',
                         dest='verbose',
                         action='store_true',
                         default=False,
                         help='Write debug messages to stderr.')
    optparser.add_option_group(group_log)


def validate_log_options(optparser: OptionParser, options: Values) -> None:
    """
    Set the log level from --quiet / --verbose.
    :param optparser: OptionParser object.
    :param options: Options object.
    :return: None
    """
    if options.quiet and options.verbose:
        exit_with_help(optparser, '--quiet and --verbose cannot be used together.')
    if options.quiet:
        set_level('WARNING')
    elif options.verbose:
        set_level('DEBUG')
    else:
        set_level('INFO')
