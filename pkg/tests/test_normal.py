import numpy as np
import pytest

from JELSV.exceptions import DegenerateVariance, InsufficientSample, OutOfRange
from JELSV.normal import normal_cdf, normal_quantile, normal_test, psi_plugin, two_sided_p_value
from JELSV.samples import pool, validate_sample
from JELSV.utils import read_yaml_file


@pytest.fixture(scope='module')
def special_values() -> dict:
    return read_yaml_file('tests/_data/special_values.yaml')['normal']


def test_normal_quantile(special_values: dict):
    for case in special_values['quantile']:
        assert normal_quantile(case['q']) == pytest.approx(case['value'], rel=1e-12, abs=1e-14)
    assert normal_quantile(0.975) == pytest.approx(1.959964, abs=1e-5)
    assert normal_quantile(0.025) == pytest.approx(-normal_quantile(0.975), rel=1e-12)
    for q in (0.0, 1.0, -0.5):
        with pytest.raises(OutOfRange):
            normal_quantile(q)


def test_normal_cdf(special_values: dict):
    for case in special_values['cdf']:
        assert normal_cdf(case['z']) == pytest.approx(case['value'], rel=1e-12)
    assert two_sided_p_value(1.959963984540054) == pytest.approx(0.05, rel=1e-10)
    assert two_sided_p_value(-1.959963984540054) == pytest.approx(0.05, rel=1e-10)


def test_psi_plugin_matches_direct_formula():
    x = validate_sample([1.0, 3.0, 3.0, 7.0], label='x')
    y = validate_sample([2.0, 3.0, 10.0], label='y')
    pooled = pool(x, y)
    z = pooled.values
    n = pooled.n
    psi = psi_plugin(pooled, z)
    for i, point in enumerate(z):
        expected = (point**2 * np.sum(z < point) / n - 2.0 * point * np.sum(z[z < point]) / n -
                    np.sum(z[z > point]**2) / n)
        assert psi[i] == pytest.approx(expected, rel=1e-12)
    assert isinstance(psi_plugin(pooled, 3.0), float)


def test_normal_test_identical_samples():
    rng = np.random.default_rng(4)
    values = rng.exponential(1.0, size=60)
    result = normal_test(validate_sample(values), validate_sample(values))
    assert result.z == pytest.approx(0.0, abs=1e-9)
    assert not result.reject
    assert result.p_hat == 0.5
    assert result.s2 > 0.0
    assert result.critical_value == pytest.approx(1.959963984540054, rel=1e-12)


def test_normal_test_detects_spread():
    rng = np.random.default_rng(6)
    x = validate_sample(rng.exponential(3.0, size=500), label='x')
    y = validate_sample(rng.exponential(1.0, size=500), label='y')
    result = normal_test(x, y, alpha=0.05)
    assert result.delta > 0.0
    assert result.reject
    assert result.p_value < 0.05


def test_normal_test_scale_invariance():
    rng = np.random.default_rng(9)
    x = validate_sample(rng.exponential(1.0, size=30))
    y = validate_sample(rng.exponential(1.3, size=45))
    base = normal_test(x, y)
    scaled = normal_test(x.scaled(3.7), y.scaled(3.7))
    assert scaled.z == pytest.approx(base.z, rel=1e-8)
    assert scaled.s2 == pytest.approx(3.7**4 * base.s2, rel=1e-8)


def test_normal_test_swap_antisymmetry():
    rng = np.random.default_rng(10)
    x = validate_sample(rng.lognormal(0.0, 1.0, size=40), label='x')
    y = validate_sample(rng.exponential(0.5, size=55), label='y')
    forward, backward = normal_test(x, y), normal_test(y, x)
    assert backward.z == pytest.approx(-forward.z, rel=1e-10)
    assert backward.p_value == pytest.approx(forward.p_value, rel=1e-10)
    assert backward.reject == forward.reject


def test_normal_test_errors():
    with pytest.raises(DegenerateVariance):
        normal_test(validate_sample([2.0, 2.0]), validate_sample([2.0, 2.0, 2.0]))
    with pytest.raises(InsufficientSample):
        normal_test(validate_sample([1.0]), validate_sample([1.0, 2.0]))
    with pytest.raises(OutOfRange):
        normal_test(validate_sample([1.0, 2.0]), validate_sample([1.0, 2.0]), alpha=0.0)
