import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from ..exceptions import ConfigError, DegenerateVariance, HullViolation, SolverFailure
from ..jel import chi2_1_isf, jel_statistic
from ..log import debug, info, warning
from ..normal import normal_test
from ..samples import pool
from ..ustat import jackknife_pseudovalues
from ..utils import open_text
from ._config import SimulationConfig
from ._distributions import replication_stream, sample_from


# ------------------------------------
# Classes
# ------------------------------------
@dataclass(frozen=True)
class ReplicationOutcome:
    reject: bool
    boundary: bool = False
    degenerate: bool = False
    solver_failure: bool = False


@dataclass(frozen=True)
class SimulationRow:
    n: int
    rejections: int
    replications: int
    hull_violations: int
    degenerate: int
    seconds: float
    solver_failures: int = 0

    @property
    def rate(self) -> float:
        return self.rejections / self.replications

    @property
    def stderr(self) -> float:
        return float(np.sqrt(self.rate * (1.0 - self.rate) / self.replications))


@dataclass(frozen=True)
class SimulationReport:
    config: SimulationConfig
    rows: List[SimulationRow] = field(default_factory=list)

    @property
    def seconds(self) -> float:
        return sum(row.seconds for row in self.rows)

    def rate(self, n: int) -> float:
        for row in self.rows:
            if row.n == n:
                return row.rate
        raise KeyError(n)

    def to_frame(self, timing: bool = False) -> pd.DataFrame:
        """
        One row per sample size
        :param timing: bool, add the wall-clock seconds column
        :return: pd.DataFrame
        """
        columns = ['n', 'rate', 'stderr', 'hull_violations', 'degenerate', 'solver_failures']
        if timing:
            columns.append('seconds')
        records = [{
            'n': row.n,
            'rate': row.rate,
            'stderr': row.stderr,
            'hull_violations': row.hull_violations,
            'degenerate': row.degenerate,
            'solver_failures': row.solver_failures,
            'seconds': row.seconds,
        } for row in self.rows]
        return pd.DataFrame.from_records(records, columns=columns)


# ------------------------------------
# Replications
# ------------------------------------
def run_replication(config: SimulationConfig, n: int, replication: int) -> ReplicationOutcome:
    """
    One replication: draw both samples from the replication's own stream and run the configured test
    :param config: SimulationConfig
    :param n: int, per-sample size
    :param replication: int, replication index
    :return: ReplicationOutcome
    """

    stream = replication_stream(config.seed, n, replication)
    x = sample_from(config.dist_x, n, stream, label='x')
    y = sample_from(config.dist_y, n, stream, label='y')

    if pool(x, y).is_degenerate:
        return ReplicationOutcome(reject=False, degenerate=True)

    try:
        if config.method == 'normal':
            return ReplicationOutcome(reject=normal_test(x, y, config.alpha).reject)
        solution = jel_statistic(jackknife_pseudovalues(x, y))
    except HullViolation:
        # boundary outcome, counted as a rejection
        return ReplicationOutcome(reject=True, boundary=True)
    except DegenerateVariance:
        return ReplicationOutcome(reject=False, degenerate=True)
    except SolverFailure as err:
        debug(f'n = {n}, replication {replication}: {err}')
        return ReplicationOutcome(reject=False, solver_failure=True)
    return ReplicationOutcome(reject=solution.statistic > chi2_1_isf(config.alpha))


def _summarize(n: int, outcomes: Sequence[ReplicationOutcome], seconds: float) -> SimulationRow:
    return SimulationRow(n=n,
                         rejections=sum(outcome.reject for outcome in outcomes),
                         replications=len(outcomes),
                         hull_violations=sum(outcome.boundary for outcome in outcomes),
                         degenerate=sum(outcome.degenerate for outcome in outcomes),
                         seconds=seconds,
                         solver_failures=sum(outcome.solver_failure for outcome in outcomes))


def run_simulation(config: SimulationConfig, n_cpu: Optional[int] = None) -> SimulationReport:
    """
    Rejection rates of the configured test for every sample size
    :param config: SimulationConfig
    :param n_cpu: int, worker processes, defaults to config.n_cpu
    :return: SimulationReport

    Replication r at size n always uses the stream keyed by (seed, n, r), and outcomes are
    reduced in replication order, so the report does not depend on n_cpu.
    """

    n_cpu = config.n_cpu if n_cpu is None else n_cpu
    executor = ProcessPoolExecutor(max_workers=n_cpu) if n_cpu > 1 else None
    info(f'simulating {config.name}: method {config.method}, {config.replications} replications, '
         f'alpha {config.alpha}, seed {config.seed}, {n_cpu} worker(s).')

    rows: List[SimulationRow] = []
    try:
        for n in config.sizes:
            start = time.perf_counter()
            task = partial(run_replication, config, n)
            replications = range(config.replications)
            if executor is None:
                outcomes = [task(r) for r in replications]
            else:
                chunksize = max(1, config.replications // (4 * n_cpu))
                outcomes = list(executor.map(task, replications, chunksize=chunksize))
            row = _summarize(n, outcomes, time.perf_counter() - start)
            info(f'n = {n}: rate {row.rate:.4f} (se {row.stderr:.4f}), '
                 f'{row.hull_violations} boundary, {row.degenerate} degenerate, {row.seconds:.2f} s.')
            if row.degenerate > 0:
                warning(f'n = {n}: {row.degenerate} degenerate replication(s) counted as non-rejections.')
            if row.solver_failures > 0:
                warning(f'n = {n}: the multiplier solver failed in {row.solver_failures} replication(s), '
                        f'counted as non-rejections.')
            rows.append(row)
    finally:
        if executor is not None:
            executor.shutdown()

    return SimulationReport(config=config, rows=rows)


def run_type1(config: SimulationConfig, n_cpu: Optional[int] = None) -> SimulationReport:
    """
    Empirical type-I error, both samples from the same distribution
    :param config: SimulationConfig with dist_x == dist_y
    :param n_cpu: int, worker processes
    :return: SimulationReport
    """
    if not config.is_null:
        raise ConfigError('family.y', f'type-I error runs need the same distribution for x and y, '
                          f'got {config.dist_x} and {config.dist_y}.')
    return run_simulation(config, n_cpu)


def run_power(config: SimulationConfig, n_cpu: Optional[int] = None) -> SimulationReport:
    """
    Empirical power against the alternative given by dist_x and dist_y
    :param config: SimulationConfig
    :param n_cpu: int, worker processes
    :return: SimulationReport
    """
    if config.is_null:
        debug(f'{config.name}: identical distributions, the power run estimates the type-I error.')
    return run_simulation(config, n_cpu)


# ------------------------------------
# Report writers
# ------------------------------------
def _config_header(reports: Sequence[SimulationReport]) -> str:
    lines = []
    for i, report in enumerate(reports):
        prefix = f'# scenario {i + 1} ' if len(reports) > 1 else '# '
        for key, value in report.config.to_mapping().items():
            lines.append(f'{prefix}{key}: {value}\n')
    return ''.join(lines)


def reports_to_frame(reports: Sequence[SimulationReport], timing: bool = False) -> pd.DataFrame:
    if len(reports) == 1:
        return reports[0].to_frame(timing=timing)
    frames = []
    for report in reports:
        frame = report.to_frame(timing=timing)
        frame.insert(0, 'scenario', report.config.name)
        frames.append(frame)
    return pd.concat(frames, ignore_index=True)


def write_report_csv(reports: Sequence[SimulationReport], filename: str, timing: bool = False) -> None:
    """
    CSV report, preceded by '#' lines echoing the resolved configs
    :param reports: list of SimulationReport
    :param filename: output file, compressed when it ends with .gz
    :param timing: bool, add the seconds column
    :return: None
    """
    with open_text(filename, 'w') as fhd:
        fhd.write(_config_header(reports))
        reports_to_frame(reports, timing=timing).to_csv(fhd, index=False, lineterminator='\n')


def format_report_table(reports: Sequence[SimulationReport]) -> str:
    """
    Aligned text table, one row per n and one column per scenario
    :param reports: list of SimulationReport
    :return: str
    """
    table = pd.DataFrame({report.config.name: {row.n: row.rate for row in report.rows} for report in reports})
    table = table.sort_index()
    table.index.name = 'n'
    return table.to_string(float_format=lambda value: f'{value:.3f}', na_rep='-') + '\n'
