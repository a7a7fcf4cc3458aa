import itertools
from dataclasses import dataclass
from math import comb
from typing import Tuple, Union

import numpy as np

from ..exceptions import InsufficientSample
from ..log import debug
from ..samples import Sample, SortedIndex, pool

Real = Union[float, np.ndarray]


# ------------------------------------
# Classes
# ------------------------------------
@dataclass(frozen=True)
class KernelArgs:
    x1: float
    x2: float
    y1: float
    y2: float


@dataclass(frozen=True)
class DecomposedSums:
    """
    Aggregate sums behind the departure estimator, over ordered index pairs:

    s_yy = sum_{k!=l} Y_k Y_l [Y_k > Y_l]     s_xx = sum_{i!=j} X_i X_j [X_i > X_j]
    s_b  = sum_{i,k} X_i Y_k [Y_k > X_i]      s_c  = sum_{i,k} X_i Y_k [X_i > Y_k]
    s_d  = sum_{i,k} X_i^2 [X_i > Y_k]        s_e  = sum_{i,k} Y_k^2 [Y_k > X_i]
    """

    s_yy: np.longdouble
    s_xx: np.longdouble
    s_b: np.longdouble
    s_c: np.longdouble
    s_d: np.longdouble
    s_e: np.longdouble
    n1: int
    n2: int

    @property
    def delta(self) -> float:
        return float(_delta_from_sums(self.s_yy, self.s_xx, self.s_b, self.s_c, self.s_d, self.s_e, self.n1, self.n2))


@dataclass(frozen=True)
class DeltaEstimate:
    value: float
    sums: DecomposedSums
    degenerate: bool = False


@dataclass(frozen=True, eq=False)
class PseudoValues:
    """
    Jackknife pseudo-values in pooled order: nu[:n1] come from deleting X_i,
    nu[n1:] from deleting Y_k.
    """

    nu: np.ndarray
    full_delta: float
    n1: int
    degenerate: bool = False

    def __len__(self) -> int:
        return self.nu.shape[0]

    @property
    def n2(self) -> int:
        return len(self) - self.n1

    def deleted(self, i: int) -> Tuple[str, int]:
        """Which observation was removed to produce nu[i]."""
        return ('x', i) if i < self.n1 else ('y', i - self.n1)


# ------------------------------------
# Kernel and estimators
# ------------------------------------
def kernel_h(a: KernelArgs) -> float:
    """
    Four-argument kernel whose expectation is the departure measure.
    Indicators are strict.
    :param a: KernelArgs
    :return: float
    """

    x1, x2, y1, y2 = a.x1, a.x2, a.y1, a.y2
    return (y1 * y2 * (y1 > y2) + y1 * y2 * (y2 > y1)
            - x1 * x2 * (x1 > x2) - x1 * x2 * (x2 > x1)
            + x1 * y1 * (y1 > x1) + x2 * y2 * (y2 > x2)
            - x1 * y1 * (x1 > y1) - x2 * y2 * (x2 > y2)
            + x1**2 * (x1 > y1) + x2**2 * (x2 > y2)
            - y1**2 * (y1 > x1) - y2**2 * (y2 > x2))


def _delta_from_sums(s_yy: Real, s_xx: Real, s_b: Real, s_c: Real, s_d: Real, s_e: Real, n1: int, n2: int) -> Real:
    return (2 * s_yy / (n2 * (n2 - 1)) - 2 * s_xx / (n1 * (n1 - 1)) + 2 * (s_b - s_c + s_d - s_e) / (n1 * n2))


def _check_sizes(x: Sample, y: Sample, required: int) -> None:
    if len(x) < required:
        raise InsufficientSample(x.label, len(x), required)
    if len(y) < required:
        raise InsufficientSample(y.label, len(y), required)


def _is_degenerate(x: Sample, y: Sample) -> bool:
    return pool(x, y).is_degenerate


def decompose(x: Sample, y: Sample) -> DecomposedSums:
    """
    Compute the six aggregate sums with sorting and prefix sums, O((n1 + n2) log(n1 + n2))
    :param x: Sample
    :param y: Sample
    :return: DecomposedSums
    """

    xi, yi = x.index, y.index
    xv = x.values.astype(np.longdouble)
    yv = y.values.astype(np.longdouble)

    # tied values fall out of every strict count
    s_xx = np.sum(xv * xi.sum_below(x.values))
    s_yy = np.sum(yv * yi.sum_below(y.values))
    s_b = np.sum(xv * yi.sum_above(x.values))
    s_c = np.sum(xv * yi.sum_below(x.values))
    s_d = np.sum(xv * xv * yi.count_below(x.values))
    s_e = np.sum(yi.sum_sq_above(x.values))

    # kept in extended precision, the jackknife subtracts from them
    sums = DecomposedSums(s_yy=s_yy,
                          s_xx=s_xx,
                          s_b=s_b,
                          s_c=s_c,
                          s_d=s_d,
                          s_e=s_e,
                          n1=len(x),
                          n2=len(y))
    debug(f'decomposed sums: {sums}')
    return sums


def _decompose_naive(x: Sample, y: Sample) -> DecomposedSums:
    X, Y = x.values, y.values
    s_xx = sum(a * b for a, b in itertools.permutations(X, 2) if a > b)
    s_yy = sum(a * b for a, b in itertools.permutations(Y, 2) if a > b)
    s_b = sum(a * b for a in X for b in Y if b > a)
    s_c = sum(a * b for a in X for b in Y if a > b)
    s_d = sum(a * a for a in X for b in Y if a > b)
    s_e = sum(b * b for a in X for b in Y if b > a)
    return DecomposedSums(s_yy=np.longdouble(s_yy),
                          s_xx=np.longdouble(s_xx),
                          s_b=np.longdouble(s_b),
                          s_c=np.longdouble(s_c),
                          s_d=np.longdouble(s_d),
                          s_e=np.longdouble(s_e),
                          n1=len(x),
                          n2=len(y))


def delta_naive(x: Sample, y: Sample) -> DeltaEstimate:
    """
    Brute-force departure estimator: average of the kernel over all x pairs and
    y pairs, with the kernel averaged over both pairings of the y pair with the x pair.
    O(n1^2 n2^2), meant as an oracle.
    :param x: Sample
    :param y: Sample
    :return: DeltaEstimate
    """

    _check_sizes(x, y, 2)

    X, Y = x.values, y.values
    total = 0.0
    for i, j in itertools.combinations(range(len(x)), 2):
        for k, l in itertools.combinations(range(len(y)), 2):
            total += 0.5 * (kernel_h(KernelArgs(X[i], X[j], Y[k], Y[l])) +
                            kernel_h(KernelArgs(X[i], X[j], Y[l], Y[k])))
    value = total / (comb(len(x), 2) * comb(len(y), 2))

    return DeltaEstimate(value=float(value), sums=_decompose_naive(x, y), degenerate=_is_degenerate(x, y))


def delta_fast(x: Sample, y: Sample) -> DeltaEstimate:
    """
    Departure estimator through the sum decomposition.
    Equal to delta_naive, including with ties.
    :param x: Sample
    :param y: Sample
    :return: DeltaEstimate
    """

    _check_sizes(x, y, 2)

    sums = decompose(x, y)
    return DeltaEstimate(value=sums.delta, sums=sums, degenerate=_is_degenerate(x, y))


# ------------------------------------
# Jackknife
# ------------------------------------
def _drop_contributions(own: SortedIndex, other: SortedIndex, values: np.ndarray) -> Tuple[np.ndarray, ...]:
    """
    Contribution of each value of one sample to the within-sample sum and to
    the four cross sums, seen from that sample. Returned as
    (within, own*other[other > own], own*other[own > other], own^2[own > other], other^2[other > own]).
    """

    v = values.astype(np.longdouble)
    within = v * (own.total - own.multiplicity(values) * v)
    other_above = v * other.sum_above(values)
    other_below = v * other.sum_below(values)
    own_sq_above = v * v * other.count_below(values)
    other_sq_above = other.sum_sq_above(values)
    return within, other_above, other_below, own_sq_above, other_sq_above


def jackknife_pseudovalues(x: Sample, y: Sample) -> PseudoValues:
    """
    Jackknife pseudo-values nu_i = n * T - (n - 1) * T_(-i) over the pooled sample.
    Leave-one-out estimates are obtained by subtracting the deleted observation's
    contribution from each aggregate sum, O(n log n) overall.
    :param x: Sample
    :param y: Sample
    :return: PseudoValues
    """

    _check_sizes(x, y, 3)

    n1, n2 = len(x), len(y)
    n = n1 + n2
    full = delta_fast(x, y)
    s = full.sums

    # delete X_i: X_i is the "own" sample
    xx, b_x, c_x, d_x, e_x = _drop_contributions(x.index, y.index, x.values)
    loo_x = _delta_from_sums(s.s_yy, s.s_xx - xx, s.s_b - b_x, s.s_c - c_x, s.s_d - d_x, s.s_e - e_x, n1 - 1, n2)

    # delete Y_k: seen from Y, "other above" feeds s_c and "other below" feeds s_b
    yy, c_y, b_y, e_y, d_y = _drop_contributions(y.index, x.index, y.values)
    loo_y = _delta_from_sums(s.s_yy - yy, s.s_xx, s.s_b - b_y, s.s_c - c_y, s.s_d - d_y, s.s_e - e_y, n1, n2 - 1)

    loo = np.concatenate((loo_x, loo_y))
    nu = (n * _delta_from_sums(s.s_yy, s.s_xx, s.s_b, s.s_c, s.s_d, s.s_e, n1, n2) - (n - 1) * loo).astype(np.float64)
    nu.setflags(write=False)
    debug(f'pseudo-values: mean {nu.mean()}, full estimate {full.value}')

    return PseudoValues(nu=nu, full_delta=full.value, n1=n1, degenerate=full.degenerate)


def jackknife_pseudovalues_naive(x: Sample, y: Sample) -> PseudoValues:
    """
    Delete-and-recompute pseudo-values built on delta_naive. Test oracle.
    :param x: Sample
    :param y: Sample
    :return: PseudoValues
    """

    _check_sizes(x, y, 3)

    n = len(x) + len(y)
    full = delta_naive(x, y)
    loo = [delta_naive(x.without(i), y).value for i in range(len(x))]
    loo += [delta_naive(x, y.without(k)).value for k in range(len(y))]
    nu = n * full.value - (n - 1) * np.array(loo)
    nu.setflags(write=False)
    return PseudoValues(nu=nu, full_delta=full.value, n1=len(x), degenerate=full.degenerate)
