import glob
from typing import Dict

import numpy as np
import pytest
from scipy import integrate, stats

from JELSV.exceptions import ConfigError, InvalidParameters, SolverFailure
from JELSV.montecarlo import (DistributionSpec, SimulationConfig, cdf, config_from_mapping, format_report_table,
                              load_config, make_spec, population_delta, population_semivariance, quantile_function,
                              replication_stream, run_power, run_replication, run_simulation, run_type1, sample_from)

EXP2 = make_spec('exponential', 2.0)
PARETO2 = make_spec('pareto', 2.0)
PARETO3 = make_spec('pareto', 3.0)
LN01 = make_spec('lognormal', (0.0, 1.0))


@pytest.fixture()
def scenario() -> Dict:
    return {
        'family.x': 'exponential',
        'params.x': [2],
        'family.y': 'exponential',
        'params.y': [2],
        'sizes': [10, 20],
        'reps': 30,
        'alpha': 0.05,
        'seed': 7,
        'method': 'jel',
    }


def test_quantile_function():
    assert quantile_function(EXP2, 0.5) == pytest.approx(0.346574, abs=1e-6)
    assert quantile_function(PARETO2, 0.75) == pytest.approx(2.0, rel=1e-12)
    assert quantile_function(LN01, 0.5) == pytest.approx(1.0, rel=1e-12)
    u = np.array([0.1, 0.5, 0.9])
    assert np.allclose(cdf(EXP2, quantile_function(EXP2, u)), u)
    assert np.allclose(cdf(PARETO3, quantile_function(PARETO3, u)), u)
    assert np.allclose(cdf(LN01, quantile_function(LN01, u)), u)


def test_distribution_spec_validation():
    with pytest.raises(InvalidParameters):
        make_spec('gamma', 1.0)
    with pytest.raises(InvalidParameters):
        make_spec('exponential', 0.0)
    with pytest.raises(InvalidParameters):
        make_spec('pareto', -1.0)
    with pytest.raises(InvalidParameters):
        make_spec('lognormal', (0.0, 0.0))
    with pytest.raises(InvalidParameters):
        make_spec('lognormal', 1.0)
    assert str(LN01) == 'LN(0,1)'
    assert make_spec('exponential', [2]) == EXP2


@pytest.mark.parametrize('spec, reference', [
    (EXP2, stats.expon(scale=0.5)),
    (PARETO3, stats.pareto(b=3.0)),
    (make_spec('lognormal', (1.0, 2.0)), stats.lognorm(s=2.0, scale=np.e)),
])
def test_sampler_ks(spec: DistributionSpec, reference):
    n = 100_000
    draws = sample_from(spec, n, replication_stream(1234, n, 0)).values
    assert np.all(draws > 0)
    distance = stats.kstest(draws, reference.cdf).statistic
    assert distance < 1.36 / np.sqrt(n) * 1.5


def test_replication_stream_is_keyed():
    a = replication_stream(5, 20, 3).random(4)
    b = replication_stream(5, 20, 3).random(4)
    c = replication_stream(5, 20, 4).random(4)
    d = replication_stream(5, 21, 3).random(4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)


@pytest.mark.parametrize('spec, t', [(EXP2, 0.0), (EXP2, 1.3), (PARETO3, 0.5), (PARETO3, 2.5), (LN01, 0.3),
                                     (LN01, 4.0)])
def test_population_semivariance(spec: DistributionSpec, t: float):
    if spec.family == 'exponential':
        density = stats.expon(scale=1.0 / spec.params[0]).pdf
    elif spec.family == 'pareto':
        density = stats.pareto(b=spec.params[0]).pdf
    else:
        density = stats.lognorm(s=spec.params[1], scale=np.exp(spec.params[0])).pdf
    lower = max(t, 1.0) if spec.family == 'pareto' else t
    numeric, _ = integrate.quad(lambda x: (x - t)**2 * density(x), lower, np.inf)
    assert population_semivariance(spec, t) == pytest.approx(numeric, rel=1e-6)


def test_population_semivariance_closed_forms():
    assert population_semivariance(EXP2, 1.0) == pytest.approx(2.0 * np.exp(-2.0) / 4.0, rel=1e-12)
    assert population_semivariance(PARETO2, 3.0) == float('inf')


def test_population_delta():
    # exponential rates 1/3 and 1: 9 + 13.5 - 0.5 - 1
    assert population_delta(make_spec('exponential', 1 / 3), make_spec('exponential', 1.0)) == pytest.approx(21.0,
                                                                                                             rel=1e-7)
    assert population_delta(LN01, LN01) == pytest.approx(0.0, abs=1e-10)
    forward = population_delta(LN01, EXP2)
    assert forward > 0.0
    assert population_delta(EXP2, LN01) == pytest.approx(-forward, rel=1e-8)


def test_config_from_mapping(scenario: Dict):
    config = config_from_mapping(scenario)
    assert config.dist_x == EXP2
    assert config.sizes == (10, 20)
    assert config.replications == 30
    assert config.is_null
    assert config.name == 'Exp(2)'
    assert config.to_mapping()['params.x'] == [2.0]


@pytest.mark.parametrize('key, value', [
    ('reps', 0),
    ('reps', 'many'),
    ('alpha', 1.5),
    ('method', 'bootstrap'),
    ('sizes', [2, 20]),
    ('seed', -1),
    ('family.x', 'gamma'),
    ('params.y', [-2]),
])
def test_config_errors(scenario: Dict, key: str, value):
    scenario[key] = value
    with pytest.raises(ConfigError) as exc_info:
        config_from_mapping(scenario)
    assert exc_info.value.key == key


def test_config_unknown_and_missing_keys(scenario: Dict):
    with pytest.raises(ConfigError) as exc_info:
        config_from_mapping({**scenario, 'replications': 10})
    assert exc_info.value.key == 'replications'
    del scenario['seed']
    with pytest.raises(ConfigError) as exc_info:
        config_from_mapping(scenario)
    assert exc_info.value.key == 'seed'


def test_load_config():
    config = load_config('tests/_data/simulate.yaml')
    assert config.label == 'Exp(2)'
    assert config.seed == 20240501
    assert config.with_overrides(seed=3, replications=5).replications == 5


def test_run_type1_requires_null(scenario: Dict):
    scenario['family.y'] = 'pareto'
    with pytest.raises(ConfigError):
        run_type1(config_from_mapping(scenario))


def test_single_replication(scenario: Dict):
    config = config_from_mapping({**scenario, 'reps': 1})
    report = run_simulation(config)
    for row in report.rows:
        assert row.rate in (0.0, 1.0)
        assert row.stderr == 0.0


def test_simulation_deterministic(scenario: Dict):
    config = config_from_mapping(scenario)
    serial = run_simulation(config, n_cpu=1)
    parallel = run_simulation(config, n_cpu=2)
    again = run_simulation(config, n_cpu=1)
    columns = ['n', 'rate', 'stderr', 'hull_violations', 'degenerate', 'solver_failures']
    assert serial.to_frame().equals(parallel.to_frame())
    assert serial.to_frame().equals(again.to_frame())
    assert list(serial.to_frame().columns) == columns
    assert list(serial.to_frame(timing=True).columns) == columns + ['seconds']
    for row in serial.rows:
        assert row.stderr == pytest.approx(np.sqrt(row.rate * (1.0 - row.rate) / row.replications), rel=1e-15)


def test_run_replication_matches_report(scenario: Dict):
    config = config_from_mapping(scenario)
    outcomes = [run_replication(config, 10, r) for r in range(config.replications)]
    report = run_simulation(config)
    assert report.rows[0].rejections == sum(outcome.reject for outcome in outcomes)


def test_format_report_table(scenario: Dict):
    null = run_simulation(config_from_mapping({**scenario, 'reps': 5}))
    alternative = run_simulation(
        config_from_mapping({
            **scenario, 'family.y': 'pareto',
            'sizes': [20],
            'reps': 5,
            'label': 'Scenario 3'
        }))
    table = format_report_table([null, alternative])
    lines = table.splitlines()
    assert 'Exp(2)' in lines[0] and 'Scenario 3' in lines[0]
    assert lines[-1].split()[0] == '20'
    assert '-' in lines[-2].split()


# ------------------------------------
# Calibration and power at 2000 replications
# ------------------------------------
def _config(dist_x: DistributionSpec, dist_y: DistributionSpec, n: int, method: str = 'jel') -> SimulationConfig:
    return SimulationConfig(dist_x=dist_x,
                            dist_y=dist_y,
                            sizes=(n, ),
                            replications=2000,
                            alpha=0.05,
                            seed=2024,
                            method=method)


# The chi-square(1) calibration of the JEL statistic over-rejects for these skewed,
# heavy-tailed families at n <= 100. Bands are rates from an independent re-implementation +- 4 Monte Carlo
# standard errors.
@pytest.mark.parametrize('spec, n, low, high', [
    (EXP2, 100, 0.07, 0.12),
    (EXP2, 20, 0.11, 0.18),
    (LN01, 20, 0.15, 0.23),
    (LN01, 100, 0.12, 0.19),
    (PARETO3, 100, 0.15, 0.24),
])
def test_type1_rates(spec: DistributionSpec, n: int, low: float, high: float):
    report = run_type1(_config(spec, spec, n))
    assert low <= report.rate(n) <= high
    assert report.rows[0].hull_violations == 0
    assert report.rows[0].solver_failures == 0


def test_type1_rate_decreases_with_n():
    report = run_type1(SimulationConfig(dist_x=EXP2, dist_y=EXP2, sizes=(20, 100), replications=2000, seed=2024))
    assert report.rate(100) < report.rate(20)


def test_normal_type1_rate():
    report = run_type1(_config(EXP2, EXP2, 200, method='normal'))
    assert 0.02 <= report.rate(200) <= 0.09


@pytest.mark.parametrize('dist_x, dist_y, n, low, high', [
    (LN01, EXP2, 20, 0.87, 0.93),
    (LN01, EXP2, 100, 0.995, 1.0),
    (LN01, PARETO2, 20, 0.16, 0.25),
    (EXP2, PARETO2, 20, 0.89, 0.94),
])
def test_power(dist_x: DistributionSpec, dist_y: DistributionSpec, n: int, low: float, high: float):
    report = run_power(_config(dist_x, dist_y, n))
    assert low <= report.rate(n) <= high


def test_power_scaled_spread():
    report = run_power(_config(LN01, make_spec('lognormal', (np.log(10.0), 1.0)), 100))
    assert report.rate(100) >= 0.99


def test_solver_failure_is_tallied(scenario: Dict, monkeypatch):

    def failing(nu):
        raise SolverFailure('multiplier did not converge within 200 iterations.')

    monkeypatch.setattr('JELSV.montecarlo._harness.jel_statistic', failing)
    config = config_from_mapping({**scenario, 'sizes': [10], 'reps': 4})
    outcome = run_replication(config, 10, 0)
    assert outcome.solver_failure and not outcome.reject
    row = run_simulation(config).rows[0]
    assert (row.solver_failures, row.rejections, row.rate) == (4, 0, 0.0)
    assert run_simulation(config).to_frame()['solver_failures'].tolist() == [4]


def test_bundled_scenarios_load():
    files = sorted(glob.glob('scenarios/*.yaml'))
    assert len(files) == 18
    configs = [load_config(config_file) for config_file in files]
    assert sum(config.is_null for config in configs) == 9
    for config in configs:
        assert config.sizes == (20, 40, 60, 80, 100)
        assert config.replications == 10000
