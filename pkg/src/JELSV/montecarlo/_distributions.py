from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np
from scipy import integrate
from scipy.special import ndtr, ndtri

from ..exceptions import InvalidParameters
from ..samples import Sample, validate_sample

FAMILIES = ('exponential', 'pareto', 'lognormal')
N_PARAMS = {'exponential': 1, 'pareto': 1, 'lognormal': 2}

# uniforms are built from 53 random bits, offset by half a step to stay inside (0, 1)
_BITS = 2**53


@dataclass(frozen=True)
class DistributionSpec:
    """
    exponential: (rate,)
    pareto: (shape,) with scale 1, support [1, inf)
    lognormal: (mu, sigma)
    """

    family: str
    params: Tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, 'params', tuple(float(p) for p in self.params))
        validate_spec(self)

    def __str__(self) -> str:
        if self.family == 'exponential':
            return f'Exp({self.params[0]:g})'
        if self.family == 'pareto':
            return f'Pareto({self.params[0]:g})'
        return f'LN({self.params[0]:g},{self.params[1]:g})'


def validate_spec(spec: DistributionSpec) -> None:
    """
    Check the family name and parameter positivity
    :param spec: DistributionSpec
    :return: None
    """

    if spec.family not in FAMILIES:
        raise InvalidParameters(f'unknown family {spec.family!r}, expected one of {", ".join(FAMILIES)}.')
    if len(spec.params) != N_PARAMS[spec.family]:
        raise InvalidParameters(f'{spec.family} takes {N_PARAMS[spec.family]} parameter(s), got {len(spec.params)}.')
    if not all(np.isfinite(spec.params)):
        raise InvalidParameters(f'{spec.family} parameters must be finite, got {spec.params}.')
    if spec.family in ('exponential', 'pareto') and spec.params[0] <= 0:
        raise InvalidParameters(f'{spec.family} parameter must be positive, got {spec.params[0]}.')
    if spec.family == 'lognormal' and spec.params[1] <= 0:
        raise InvalidParameters(f'lognormal sigma must be positive, got {spec.params[1]}.')


def make_spec(family: str, params: Union[float, Sequence[float]]) -> DistributionSpec:
    params_ = (params, ) if np.isscalar(params) else tuple(params)  # type: ignore
    return DistributionSpec(family=family, params=params_)  # type: ignore


# ------------------------------------
# Sampling
# ------------------------------------
def quantile_function(spec: DistributionSpec, u: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """
    Inverse distribution function
    :param spec: DistributionSpec
    :param u: float or ndarray in (0, 1)
    :return: float or ndarray
    """

    u = np.asarray(u, dtype=np.float64)
    if spec.family == 'exponential':
        x = -np.log1p(-u) / spec.params[0]
    elif spec.family == 'pareto':
        x = (1.0 - u)**(-1.0 / spec.params[0])
    else:
        mu, sigma = spec.params
        x = np.exp(mu + sigma * ndtri(u))
    return float(x) if x.ndim == 0 else x


def uniform_open(stream: np.random.Generator, n: int) -> np.ndarray:
    return (stream.integers(0, _BITS, size=n, dtype=np.int64) + 0.5) / _BITS


def sample_from(spec: DistributionSpec, n: int, stream: np.random.Generator, label: str = 'sample') -> Sample:
    """
    Inverse-CDF sampling
    :param spec: DistributionSpec
    :param n: int, sample size
    :param stream: np.random.Generator
    :param label: str, label of the returned sample
    :return: Sample
    """
    validate_spec(spec)
    return validate_sample(quantile_function(spec, uniform_open(stream, n)), label=label)


def replication_stream(seed: int, n: int, replication: int) -> np.random.Generator:
    """
    Child stream for one replication, keyed by (seed, n, replication).
    Philox is counter-based, so streams do not depend on the order they are created in.
    :param seed: int, non-negative master seed
    :param n: int, sample size
    :param replication: int, replication index
    :return: np.random.Generator
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, n, replication])))


def cdf(spec: DistributionSpec, x: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    x = np.asarray(x, dtype=np.float64)
    if spec.family == 'exponential':
        value = np.where(x > 0, -np.expm1(-spec.params[0] * np.maximum(x, 0)), 0.0)
    elif spec.family == 'pareto':
        value = np.where(x > 1, 1.0 - np.maximum(x, 1.0)**(-spec.params[0]), 0.0)
    else:
        mu, sigma = spec.params
        with np.errstate(divide='ignore'):
            value = np.where(x > 0, ndtr((np.log(np.maximum(x, 1e-300)) - mu) / sigma), 0.0)
    return float(value) if value.ndim == 0 else value


def pdf(spec: DistributionSpec, x: float) -> float:
    if spec.family == 'exponential':
        rate = spec.params[0]
        return rate * np.exp(-rate * x) if x >= 0 else 0.0
    if spec.family == 'pareto':
        shape = spec.params[0]
        return shape * x**(-shape - 1.0) if x >= 1 else 0.0
    mu, sigma = spec.params
    if x <= 0:
        return 0.0
    return float(np.exp(-0.5 * ((np.log(x) - mu) / sigma)**2) / (x * sigma * np.sqrt(2.0 * np.pi)))


# ------------------------------------
# Population quantities
# ------------------------------------
def population_semivariance(spec: DistributionSpec, t: float) -> float:
    """
    Upper semivariance E[(X - t)^2; X > t] in closed form
    :param spec: DistributionSpec
    :param t: float, target
    :return: float, inf when the second moment does not exist
    """

    if spec.family == 'exponential':
        rate = spec.params[0]
        if t <= 0:
            return 2.0 / rate**2 - 2.0 * t / rate + t * t
        return 2.0 * np.exp(-rate * t) / rate**2

    if spec.family == 'pareto':
        shape = spec.params[0]
        if shape <= 2:
            return float('inf')
        if t <= 1:
            return shape / (shape - 2.0) - 2.0 * t * shape / (shape - 1.0) + t * t
        return 2.0 * t**(2.0 - shape) / ((shape - 1.0) * (shape - 2.0))

    # lognormal: partial moments E[X^k; X > t] = exp(k mu + k^2 sigma^2 / 2) Phi((mu + k sigma^2 - ln t) / sigma)
    mu, sigma = spec.params

    def partial(k: int) -> float:
        moment = np.exp(k * mu + 0.5 * k * k * sigma * sigma)
        if t <= 0:
            return float(moment)
        return float(moment * ndtr((mu + k * sigma * sigma - np.log(t)) / sigma))

    return partial(2) - 2.0 * t * partial(1) + t * t * partial(0)


def population_delta(spec_x: DistributionSpec, spec_y: DistributionSpec) -> float:
    """
    Departure measure: integral of (beta_X(t) - beta_Y(t)) against dF + dG,
    by numerical integration
    :param spec_x: DistributionSpec
    :param spec_y: DistributionSpec
    :return: float
    """

    def integrand(t: float) -> float:
        difference = population_semivariance(spec_x, t) - population_semivariance(spec_y, t)
        return difference * (pdf(spec_x, t) + pdf(spec_y, t))

    # split at the Pareto support edge so quad sees a smooth integrand on each piece
    breakpoints = [0.0, 1.0]
    total = 0.0
    for lower, upper in zip(breakpoints, breakpoints[1:] + [np.inf]):
        value, _ = integrate.quad(integrand, lower, upper, limit=200, epsabs=1e-12, epsrel=1e-10)
        total += value
    return float(total)
