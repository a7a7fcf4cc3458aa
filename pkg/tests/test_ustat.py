from typing import List, Tuple

import numpy as np
import pytest

from JELSV.exceptions import InsufficientSample
from JELSV.montecarlo import make_spec, population_delta, replication_stream, sample_from
from JELSV.samples import Sample, validate_sample
from JELSV.ustat import (KernelArgs, decompose, delta_fast, delta_naive, jackknife_pseudovalues,
                         jackknife_pseudovalues_naive, kernel_h)


def _random_pair(rng: np.random.Generator, low: int, high: int) -> Tuple[Sample, Sample]:
    n1, n2 = rng.integers(low, high + 1, size=2)
    kind = rng.integers(0, 3)
    if kind == 0:
        # tied integer data
        x, y = rng.integers(0, 5, size=n1), rng.integers(0, 5, size=n2)
    elif kind == 1:
        x, y = rng.exponential(1.0, size=n1), rng.lognormal(0.0, 1.0, size=n2)
    else:
        x, y = rng.pareto(3.0, size=n1) + 1.0, rng.uniform(0.0, 3.0, size=n2)
    return validate_sample(x, label='x'), validate_sample(y, label='y')


@pytest.fixture(scope='module')
def random_pairs() -> List[Tuple[Sample, Sample]]:
    rng = np.random.default_rng(20240501)
    return [_random_pair(rng, 2, 12) for _ in range(200)]


def _scale(x: Sample, y: Sample) -> float:
    return max(1.0, float(max(x.values.max(), y.values.max())))**2


def test_kernel_h():
    # every indicator off: x pair and y pair all equal
    assert kernel_h(KernelArgs(1.0, 1.0, 1.0, 1.0)) == 0.0
    # x1 > x2, y1 > y2, y above x
    a = KernelArgs(x1=2.0, x2=1.0, y1=4.0, y2=3.0)
    expected = 4 * 3 - 2 * 1 + 2 * 4 + 1 * 3 - 0 - 0 + 0 + 0 - 16 - 9
    assert kernel_h(a) == pytest.approx(expected)
    # the two samples trade places: the kernel flips sign
    assert kernel_h(KernelArgs(1.0, 2.0, 3.0, 4.0)) == -4.0
    assert kernel_h(KernelArgs(3.0, 4.0, 1.0, 2.0)) == 4.0


def test_delta_fast_equals_naive(random_pairs: List[Tuple[Sample, Sample]]):
    for x, y in random_pairs:
        naive = delta_naive(x, y)
        fast = delta_fast(x, y)
        assert fast.value == pytest.approx(naive.value, rel=1e-9, abs=1e-12 * _scale(x, y))
        assert fast.degenerate == naive.degenerate


def test_decompose_equals_brute_force(random_pairs: List[Tuple[Sample, Sample]]):
    for x, y in random_pairs[:50]:
        fast = decompose(x, y)
        brute = delta_naive(x, y).sums
        for name in ('s_yy', 's_xx', 's_b', 's_c', 's_d', 's_e'):
            assert float(getattr(fast, name)) == pytest.approx(float(getattr(brute, name)), rel=1e-12, abs=1e-12)


def test_delta_ties_are_strict():
    x = validate_sample([1.0, 1.0])
    y = validate_sample([1.0, 1.0])
    assert delta_fast(x, y).value == 0.0
    assert delta_fast(x, y).degenerate


def test_delta_small_example():
    # x = {0, 2}, y = {1, 3}, checked against the kernel by hand
    x = validate_sample([0.0, 2.0])
    y = validate_sample([1.0, 3.0])
    by_hand = 0.5 * (kernel_h(KernelArgs(0.0, 2.0, 1.0, 3.0)) + kernel_h(KernelArgs(0.0, 2.0, 3.0, 1.0)))
    assert delta_fast(x, y).value == pytest.approx(by_hand)

    x = validate_sample([1.0, 3.0])
    y = validate_sample([2.0, 4.0])
    assert delta_naive(x, y).value == pytest.approx(-2.5)
    assert delta_fast(x, y).value == pytest.approx(-2.5)


def test_delta_insufficient_sample():
    with pytest.raises(InsufficientSample):
        delta_fast(validate_sample([1.0]), validate_sample([1.0, 2.0]))


def test_jackknife_mean_identity(random_pairs: List[Tuple[Sample, Sample]]):
    for x, y in random_pairs:
        if len(x) < 3 or len(y) < 3:
            continue
        pseudo = jackknife_pseudovalues(x, y)
        assert len(pseudo) == len(x) + len(y)
        assert np.mean(pseudo.nu) == pytest.approx(pseudo.full_delta, rel=1e-9, abs=1e-10 * _scale(x, y))


def test_jackknife_mean_identity_large_samples():
    rng = np.random.default_rng(11)
    x = validate_sample(rng.lognormal(0.0, 1.0, size=200_000), label='x')
    y = validate_sample(rng.lognormal(0.0, 0.8, size=200_000), label='y')
    pseudo = jackknife_pseudovalues(x, y)
    mean = float(np.mean(pseudo.nu.astype(np.longdouble)))
    assert mean == pytest.approx(pseudo.full_delta, rel=1e-9)


def test_jackknife_incremental_equals_recompute():
    rng = np.random.default_rng(5)
    for _ in range(40):
        x, y = _random_pair(rng, 3, 7)
        fast = jackknife_pseudovalues(x, y)
        naive = jackknife_pseudovalues_naive(x, y)
        scale = _scale(x, y) * (len(x) + len(y))
        assert np.allclose(fast.nu, naive.nu, rtol=1e-9, atol=1e-10 * scale)


def test_jackknife_provenance():
    x = validate_sample([1.0, 2.0, 3.0])
    y = validate_sample([0.5, 4.0, 6.0, 7.0])
    pseudo = jackknife_pseudovalues(x, y)
    assert (pseudo.n1, pseudo.n2) == (3, 4)
    assert pseudo.deleted(0) == ('x', 0)
    assert pseudo.deleted(3) == ('y', 0)
    assert pseudo.deleted(6) == ('y', 3)
    with pytest.raises(InsufficientSample):
        jackknife_pseudovalues(x, validate_sample([1.0, 2.0]))


def test_delta_invariances():
    rng = np.random.default_rng(17)
    for _ in range(20):
        x, y = _random_pair(rng, 3, 30)
        d = delta_fast(x, y).value
        tolerance = 1e-12 * _scale(x, y)
        # antisymmetry under sample swap
        assert delta_fast(y, x).value == pytest.approx(-d, rel=1e-12, abs=tolerance)
        # quadratic scale equivariance
        c = 3.7
        assert delta_fast(x.scaled(c), y.scaled(c)).value == pytest.approx(c * c * d, rel=1e-8, abs=c * c * tolerance)
        # permutation invariance of the estimate and of the pseudo-value multiset
        px = validate_sample(rng.permutation(x.values), label='x')
        py = validate_sample(rng.permutation(y.values), label='y')
        assert delta_fast(px, py).value == pytest.approx(d, rel=1e-12, abs=tolerance)
        nu = np.sort(jackknife_pseudovalues(x, y).nu)
        nu_permuted = np.sort(jackknife_pseudovalues(px, py).nu)
        assert np.allclose(nu, nu_permuted, rtol=1e-9, atol=1e-9 * _scale(x, y))


def test_delta_unbiased():
    spec_x, spec_y = make_spec('exponential', 1.0), make_spec('exponential', 2.0)
    target = population_delta(spec_x, spec_y)
    estimates = []
    for r in range(5000):
        stream = replication_stream(99, 8, r)
        x = sample_from(spec_x, 8, stream, label='x')
        y = sample_from(spec_y, 6, stream, label='y')
        estimates.append(delta_fast(x, y).value)
    estimates = np.array(estimates)
    stderr = estimates.std(ddof=1) / np.sqrt(estimates.shape[0])
    assert abs(estimates.mean() - target) < 3.0 * stderr
