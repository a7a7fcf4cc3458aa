from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Literal, Tuple, Union

import numpy as np

from ..exceptions import EmptyInput, NegativeValue, NonFiniteValue
from ..log import warning

ArrayLike = Union[float, np.ndarray]


# ------------------------------------
# Classes
# ------------------------------------
@dataclass(frozen=True, eq=False)
class SortedIndex:
    """
    Sorted copy of a sample with prefix sums, used to answer
    "how many / how much strictly below or above t" in O(log n).

    Prefix arrays have a leading zero, so ``prefix[k]`` is the total over
    the k smallest values. They are kept in extended precision.
    """

    sorted_values: np.ndarray
    prefix_sum: np.ndarray
    prefix_sum_sq: np.ndarray
    group_values: np.ndarray  # distinct values
    group_starts: np.ndarray  # first position of each tie group in sorted_values
    group_counts: np.ndarray

    @classmethod
    def from_values(cls, values: np.ndarray) -> 'SortedIndex':
        sorted_values = np.sort(np.asarray(values, dtype=np.float64))
        extended = sorted_values.astype(np.longdouble)
        prefix_sum = np.concatenate(([0], np.cumsum(extended)))
        prefix_sum_sq = np.concatenate(([0], np.cumsum(extended * extended)))
        group_values, group_starts, group_counts = np.unique(sorted_values, return_index=True, return_counts=True)
        for array in (sorted_values, prefix_sum, prefix_sum_sq, group_values, group_starts, group_counts):
            array.setflags(write=False)
        return cls(sorted_values=sorted_values,
                   prefix_sum=prefix_sum,
                   prefix_sum_sq=prefix_sum_sq,
                   group_values=group_values,
                   group_starts=group_starts,
                   group_counts=group_counts)

    @property
    def n(self) -> int:
        return self.sorted_values.shape[0]

    @property
    def total(self) -> np.longdouble:
        return self.prefix_sum[-1]

    @property
    def total_sq(self) -> np.longdouble:
        return self.prefix_sum_sq[-1]

    def _below(self, t: ArrayLike) -> np.ndarray:
        return np.searchsorted(self.sorted_values, t, side='left')

    def _not_above(self, t: ArrayLike) -> np.ndarray:
        return np.searchsorted(self.sorted_values, t, side='right')

    def count_below(self, t: ArrayLike) -> np.ndarray:
        return self._below(t)

    def count_above(self, t: ArrayLike) -> np.ndarray:
        return self.n - self._not_above(t)

    def sum_below(self, t: ArrayLike) -> np.ndarray:
        return self.prefix_sum[self._below(t)]

    def sum_above(self, t: ArrayLike) -> np.ndarray:
        return self.total - self.prefix_sum[self._not_above(t)]

    def sum_sq_below(self, t: ArrayLike) -> np.ndarray:
        return self.prefix_sum_sq[self._below(t)]

    def sum_sq_above(self, t: ArrayLike) -> np.ndarray:
        return self.total_sq - self.prefix_sum_sq[self._not_above(t)]

    def multiplicity(self, t: ArrayLike) -> np.ndarray:
        return self._not_above(t) - self._below(t)


@dataclass(frozen=True, eq=False)
class Sample:
    """
    A validated batch of observations from one population.
    """

    values: np.ndarray
    label: str = 'sample'

    def __len__(self) -> int:
        return self.values.shape[0]

    @cached_property
    def index(self) -> SortedIndex:
        return SortedIndex.from_values(self.values)

    def scaled(self, c: float) -> 'Sample':
        return validate_sample(self.values * c, allow_negative=True, label=self.label)

    def without(self, position: int) -> 'Sample':
        """Copy of the sample with one observation deleted."""
        return Sample(values=_frozen(np.delete(self.values, position)), label=self.label)


@dataclass(frozen=True, eq=False)
class PooledSample:
    """
    Pooled view Z_1..Z_n of two samples: positions [0, n1) are x, [n1, n) are y.
    """

    x: Sample
    y: Sample
    n1: int = field(init=False)
    n2: int = field(init=False)
    n: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'n1', len(self.x))
        object.__setattr__(self, 'n2', len(self.y))
        object.__setattr__(self, 'n', len(self.x) + len(self.y))

    @cached_property
    def values(self) -> np.ndarray:
        return _frozen(np.concatenate((self.x.values, self.y.values)))

    @cached_property
    def index(self) -> SortedIndex:
        return SortedIndex.from_values(self.values)

    def origin(self, i: int) -> Tuple[str, int]:
        """
        Map a 0-based pooled position to (sample label, position in that sample)
        :param i: int, pooled position
        :return: Tuple[str, int]
        """
        if not 0 <= i < self.n:
            raise IndexError(f'pooled index {i} outside [0, {self.n}).')
        if i < self.n1:
            return self.x.label, i
        return self.y.label, i - self.n1

    @property
    def is_degenerate(self) -> bool:
        return self.index.group_values.shape[0] == 1


# ------------------------------------
# Functions
# ------------------------------------
def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def validate_sample(raw: Iterable[float], allow_negative: bool = False, label: str = 'sample') -> Sample:
    """
    Validate raw observations
    :param raw: Iterable[float], observations in their original order
    :param allow_negative: bool, accept negative observations
    :param label: str, short identifier used in messages
    :return: Sample
    """

    values = np.array(raw if isinstance(raw, np.ndarray) else list(raw), dtype=np.float64).reshape(-1)
    if values.shape[0] == 0:
        raise EmptyInput(label)

    non_finite = np.flatnonzero(~np.isfinite(values))
    if non_finite.shape[0] > 0:
        raise NonFiniteValue(int(non_finite[0]), label)

    negative = np.flatnonzero(values < 0)
    if negative.shape[0] > 0:
        if not allow_negative:
            raise NegativeValue(int(negative[0]), label)
        warning(f'{label}: {negative.shape[0]} negative value(s) accepted by override.')

    return Sample(values=_frozen(values), label=label)


def pool(x: Sample, y: Sample) -> PooledSample:
    return PooledSample(x=x, y=y)


def empirical_cdf(s: Sample, t: float, strictness: Literal['left', 'right'] = 'right') -> float:
    """
    Empirical distribution function
    :param s: Sample
    :param t: float, evaluation point
    :param strictness: str, 'right' counts values <= t, 'left' counts values < t
    :return: float in [0, 1]
    """

    if strictness == 'right':
        count = len(s) - s.index.count_above(t)
    elif strictness == 'left':
        count = s.index.count_below(t)
    else:
        raise ValueError(f'Unknown strictness: {strictness}.')
    return float(count) / len(s)
