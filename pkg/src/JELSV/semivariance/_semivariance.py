import math
from dataclasses import dataclass

from ..exceptions import NonPositivePower
from ..samples import Sample


@dataclass(frozen=True)
class SemivarianceEstimate:
    """
    Empirical stop-loss moment of a sample above a target.
    power == 2 is the upper semivariance.
    """

    target: float
    value: float
    power: float = 2.0


def stop_loss_moment(s: Sample, t: float, r: float = 2.0) -> SemivarianceEstimate:
    """
    Empirical stop-loss moment (1/n) * sum_i (x_i - t)^r [x_i > t]
    :param s: Sample
    :param t: float, target
    :param r: float, positive power
    :return: SemivarianceEstimate
    """

    if not r > 0:
        raise NonPositivePower(r)

    sorted_values = s.index.sorted_values
    start = len(s) - int(s.index.count_above(t))  # first value strictly above t
    excess = sorted_values[start:] - t
    # compensated summation, ascending order
    total = math.fsum(excess**r) if excess.shape[0] > 0 else 0.0
    return SemivarianceEstimate(target=float(t), value=total / len(s), power=float(r))


def semivariance(s: Sample, t: float) -> SemivarianceEstimate:
    """
    Empirical upper semivariance of a sample above target t
    :param s: Sample
    :param t: float, target
    :return: SemivarianceEstimate
    """
    return stop_loss_moment(s, t, 2.0)
