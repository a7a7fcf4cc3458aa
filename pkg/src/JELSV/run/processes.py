import os
import sys
from optparse import OptionParser, Values
from typing import Callable, List, Optional

import numpy as np

from ..exceptions import DegenerateVariance
from ..jel import JelSolution, jel_test
from ..log import *
from ..montecarlo import (SimulationReport, format_report_table, load_config, run_power, run_type1,
                          write_report_csv)
from ..normal import NormalTestResult, normal_test
from ..semivariance import SemivarianceEstimate, stop_loss_moment
from ..ustat import delta_fast
from ..utils import DescriptiveStats, descriptive_stats, load_values
from .reports import (TestReport, describe_to_dict, format_describe_text, format_semivar_text, format_test_text,
                      report_to_dict, semivar_to_dict, to_json)


def load_parameters(opt_validate_func: Callable,
                    prepare_optparser_func: Callable[..., OptionParser],
                    argv: Optional[List[str]] = None,
                    prog: Optional[str] = None) -> Values:
    """
    Load parameters
    :param opt_validate_func: validate function
    :param prepare_optparser_func: prepare optparser function
    :param argv: command line arguments, sys.argv[1:] when None
    :param prog: program name shown in the usage line
    :return: options
    """
    options = opt_validate_func(prepare_optparser_func(prog=prog), argv)

    return options


def write_stdout(text: str) -> None:
    sys.stdout.write(text)
    sys.stdout.flush()


def sv_test(options: Values) -> TestReport:
    """
    Two-sample semivariance test process
    :param options: options
    :return: TestReport
    """

    info('---------------- Semivariance test ------------------ ')
    x = load_values(options.x, allow_negative=options.allow_negative, label='x')
    y = load_values(options.y, allow_negative=options.allow_negative, label='y')
    info(f'x: {len(x)} observations from {options.x}')
    info(f'y: {len(y)} observations from {options.y}')

    warnings: List[str] = []
    for sample, path in ((x, options.x), (y, options.y)):
        n_negative = int(np.sum(sample.values < 0))
        if n_negative > 0:
            warnings.append(f'{path}: {n_negative} negative value(s) accepted by override.')

    jel: Optional[JelSolution] = None
    normal: Optional[NormalTestResult] = None
    if options.method in ('jel', 'both'):
        jel = jel_test(x, y, alpha=options.alpha)
        if jel.is_boundary:
            warnings.append('zero lies outside the range of the pseudo-values, boundary rejection.')
        else:
            debug(f'multiplier solved in {jel.iterations} iteration(s).')
    if options.method in ('normal', 'both'):
        try:
            normal = normal_test(x, y, alpha=options.alpha)
        except DegenerateVariance as err:
            if options.method == 'normal':
                raise
            warning(str(err))
            warnings.append(str(err))

    delta = jel.delta if jel is not None else delta_fast(x, y).value
    report = TestReport(n1=len(x),
                        n2=len(y),
                        delta=delta,
                        alpha=options.alpha,
                        jel=jel,
                        normal=normal,
                        warnings=warnings)

    write_stdout(to_json(report_to_dict(report)) if options.format == 'json' else format_test_text(report))
    info(f'verdict: {report.verdict}')
    info('-------------- Semivariance test end ---------------- ')
    return report


def describe(options: Values) -> DescriptiveStats:
    """
    Descriptive statistics process
    :param options: options
    :return: DescriptiveStats
    """

    info('--------------- Descriptive statistics -------------- ')
    sample = load_values(options.input, allow_negative=options.allow_negative)
    ds = descriptive_stats(sample)
    write_stdout(to_json(describe_to_dict(ds)) if options.format == 'json' else format_describe_text(ds))
    info('------------- Descriptive statistics end ------------ ')
    return ds


def semivar(options: Values) -> SemivarianceEstimate:
    """
    Stop-loss moment process
    :param options: options
    :return: SemivarianceEstimate
    """

    info('----------------- Stop-loss moment ------------------ ')
    sample = load_values(options.input, allow_negative=options.allow_negative)
    estimate = stop_loss_moment(sample, options.target, options.power)
    if options.format == 'json':
        write_stdout(to_json(semivar_to_dict(estimate, len(sample))))
    else:
        write_stdout(format_semivar_text(estimate))
    info('--------------- Stop-loss moment end ---------------- ')
    return estimate


def table_path(csv_file: str) -> str:
    """report.csv and report.csv.gz both give report.txt"""
    stem = csv_file[:-3] if csv_file.endswith('.gz') else csv_file
    return f'{os.path.splitext(stem)[0]}.txt'


def simulate(options: Values) -> List[SimulationReport]:
    """
    Monte Carlo simulation process
    :param options: options
    :return: list of SimulationReport, one per scenario config
    """

    info('------------------- Simulation ---------------------- ')
    reports: List[SimulationReport] = []
    for config_file in options.config:
        config = load_config(config_file).with_overrides(seed=options.seed,
                                                         replications=options.reps,
                                                         n_cpu=options.n_cpu)
        info(f'scenario {config.name} from {config_file}')
        run = run_type1 if config.is_null else run_power
        reports.append(run(config))

    table = format_report_table(reports)
    write_stdout(table)
    if options.out:
        write_report_csv(reports, options.out, timing=options.timing)
        table_file = table_path(options.out)
        with open(table_file, 'w') as fhd:
            fhd.write(table)
        info(f'report written to {options.out} and {table_file}')
    info('----------------- Simulation end -------------------- ')
    return reports
