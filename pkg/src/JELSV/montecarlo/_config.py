from dataclasses import dataclass, replace
from typing import Any, Dict, Optional, Tuple

import yaml

from ..exceptions import ConfigError, InvalidParameters
from ..utils import read_yaml_file
from ._distributions import FAMILIES, DistributionSpec, make_spec

METHODS = ('jel', 'normal')
REQUIRED_KEYS = ('family.x', 'params.x', 'family.y', 'params.y', 'sizes', 'reps', 'alpha', 'seed', 'method')
OPTIONAL_KEYS = ('n_cpu', 'label')
# smallest per-sample size each test is defined for
MIN_SIZE = {'jel': 3, 'normal': 2}


@dataclass(frozen=True)
class SimulationConfig:
    dist_x: DistributionSpec
    dist_y: DistributionSpec
    sizes: Tuple[int, ...]
    replications: int
    alpha: float = 0.05
    seed: int = 0
    method: str = 'jel'
    n_cpu: int = 1
    label: str = ''

    def __post_init__(self) -> None:
        object.__setattr__(self, 'sizes', tuple(self.sizes))
        validate_config(self)

    @property
    def is_null(self) -> bool:
        return self.dist_x == self.dist_y

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        if self.is_null:
            return str(self.dist_x)
        return f'{self.dist_x} vs {self.dist_y}'

    def with_overrides(self,
                       seed: Optional[int] = None,
                       replications: Optional[int] = None,
                       n_cpu: Optional[int] = None) -> 'SimulationConfig':
        changes: Dict[str, Any] = {}
        if seed is not None:
            changes['seed'] = seed
        if replications is not None:
            changes['replications'] = replications
        if n_cpu is not None:
            changes['n_cpu'] = n_cpu
        return replace(self, **changes)

    def to_mapping(self) -> Dict[str, Any]:
        """Flat key/value form, the same keys as the config file."""
        return {
            'family.x': self.dist_x.family,
            'params.x': list(self.dist_x.params),
            'family.y': self.dist_y.family,
            'params.y': list(self.dist_y.params),
            'sizes': list(self.sizes),
            'reps': self.replications,
            'alpha': self.alpha,
            'seed': self.seed,
            'method': self.method,
            'label': self.name,
        }


def validate_config(config: SimulationConfig) -> None:
    if config.method not in METHODS:
        raise ConfigError('method', f'expected one of {", ".join(METHODS)}, got {config.method!r}.')
    if config.replications < 1:
        raise ConfigError('reps', f'must be at least 1, got {config.replications}.')
    if not config.sizes:
        raise ConfigError('sizes', 'at least one sample size is required.')
    minimum = MIN_SIZE[config.method]
    for n in config.sizes:
        if n < minimum:
            raise ConfigError('sizes', f'{config.method} needs every size to be at least {minimum}, got {n}.')
    if not 0.0 < config.alpha < 1.0:
        raise ConfigError('alpha', f'must lie in (0, 1), got {config.alpha}.')
    if config.seed < 0:
        raise ConfigError('seed', f'must be non-negative, got {config.seed}.')
    if config.n_cpu < 1:
        raise ConfigError('n_cpu', f'must be at least 1, got {config.n_cpu}.')


# ------------------------------------
# Reading
# ------------------------------------
def _as_int(params: Dict[str, Any], key: str) -> int:
    value = params[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(key, f'expected an integer, got {value!r}.')
    return value


def _as_float(params: Dict[str, Any], key: str) -> float:
    value = params[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(key, f'expected a number, got {value!r}.')
    return float(value)


def _as_spec(params: Dict[str, Any], suffix: str) -> DistributionSpec:
    family = params[f'family.{suffix}']
    values = params[f'params.{suffix}']
    if family not in FAMILIES:
        raise ConfigError(f'family.{suffix}', f'expected one of {", ".join(FAMILIES)}, got {family!r}.')
    values = values if isinstance(values, list) else [values]
    if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in values):
        raise ConfigError(f'params.{suffix}', f'expected numbers, got {values!r}.')
    try:
        return make_spec(family, values)
    except InvalidParameters as err:
        raise ConfigError(f'params.{suffix}', str(err)) from err


def config_from_mapping(params: Dict[str, Any]) -> SimulationConfig:
    """
    Build a SimulationConfig from the flat key/value mapping of a scenario file
    :param params: Dict, flat mapping
    :return: SimulationConfig
    """

    if not isinstance(params, dict):
        raise ConfigError('<root>', 'a scenario file must be a flat key: value mapping.')
    for key in params:
        if key not in REQUIRED_KEYS + OPTIONAL_KEYS:
            raise ConfigError(str(key), 'unknown key.')
    for key in REQUIRED_KEYS:
        if key not in params:
            raise ConfigError(key, 'missing.')

    sizes = params['sizes'] if isinstance(params['sizes'], list) else [params['sizes']]
    if not all(isinstance(n, int) and not isinstance(n, bool) for n in sizes):
        raise ConfigError('sizes', f'expected a list of integers, got {params["sizes"]!r}.')
    method = params['method']
    if not isinstance(method, str):
        raise ConfigError('method', f'expected one of {", ".join(METHODS)}, got {method!r}.')
    label = params.get('label', '')
    if not isinstance(label, str):
        raise ConfigError('label', f'expected text, got {label!r}.')

    return SimulationConfig(dist_x=_as_spec(params, 'x'),
                            dist_y=_as_spec(params, 'y'),
                            sizes=tuple(sizes),
                            replications=_as_int(params, 'reps'),
                            alpha=_as_float(params, 'alpha'),
                            seed=_as_int(params, 'seed'),
                            method=method,
                            n_cpu=_as_int(params, 'n_cpu') if 'n_cpu' in params else 1,
                            label=label)


def load_config(config_file: str) -> SimulationConfig:
    """
    Load a scenario file
    :param config_file: str, YAML file
    :return: SimulationConfig
    """
    try:
        params = read_yaml_file(config_file)
    except OSError as err:
        raise ConfigError('<file>', f'cannot read {config_file} ({err.strerror}).') from err
    except yaml.YAMLError as err:
        raise ConfigError('<file>', f'{config_file} is not valid YAML ({err}).') from err
    return config_from_mapping(params)
