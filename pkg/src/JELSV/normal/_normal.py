from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.special import erfc, ndtri

from ..exceptions import DegenerateVariance, InsufficientSample, OutOfRange
from ..samples import PooledSample, Sample, pool
from ..ustat import delta_fast

SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class NormalTestResult:
    delta: float
    s2: float
    z: float
    p_value: float
    reject: bool
    p_hat: float
    alpha: float
    critical_value: float


def normal_cdf(z: float) -> float:
    return float(0.5 * erfc(-z / SQRT2))


def normal_pdf(z: float) -> float:
    return float(np.exp(-0.5 * z * z) / np.sqrt(2.0 * np.pi))


def two_sided_p_value(z: float) -> float:
    return float(erfc(abs(z) / SQRT2))


def normal_quantile(q: float) -> float:
    """
    Inverse standard normal distribution function
    :param q: float in (0, 1)
    :return: float
    """

    if not 0.0 < q < 1.0:
        raise OutOfRange('q', q)
    z = float(ndtri(q))
    # one Newton step against the erfc based distribution function
    return z + (q - normal_cdf(z)) / normal_pdf(z)


def psi_plugin(pooled: PooledSample, x_val: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """
    psi(x) = x^2 F(x) - 2x int_0^x y dF(y) - int_x^inf y^2 dF(y) with F the pooled
    empirical distribution, strict on both integrals and on F.
    :param pooled: PooledSample
    :param x_val: float or ndarray, evaluation point(s)
    :return: float or ndarray
    """

    index = pooled.index
    n = pooled.n
    x = np.asarray(x_val, dtype=np.float64)
    xl = x.astype(np.longdouble)
    psi = (xl * xl * index.count_below(x) / n - 2.0 * xl * index.sum_below(x) / n - index.sum_sq_above(x) / n)
    psi = psi.astype(np.float64)
    return float(psi) if psi.ndim == 0 else psi


def normal_test(x: Sample, y: Sample, alpha: float = 0.05) -> NormalTestResult:
    """
    Normal test on sqrt(n) * delta / S with S^2 the plug-in null variance
    :param x: Sample
    :param y: Sample
    :param alpha: float, significance level
    :return: NormalTestResult
    """

    if not 0.0 < alpha < 1.0:
        raise OutOfRange('alpha', alpha)
    for sample in (x, y):
        if len(sample) < 2:
            raise InsufficientSample(sample.label, len(sample), 2)

    pooled = pool(x, y)
    psi = psi_plugin(pooled, pooled.values)
    if np.all(psi == psi[0]):
        raise DegenerateVariance('plug-in null variance is zero, the normal test is undefined.')

    p_hat = pooled.n1 / pooled.n
    s2 = 4.0 / (p_hat * (1.0 - p_hat)) * float(np.var(psi, ddof=1))
    delta = delta_fast(x, y).value
    z = np.sqrt(pooled.n) * delta / np.sqrt(s2)
    critical_value = normal_quantile(1.0 - alpha / 2.0)

    return NormalTestResult(delta=delta,
                            s2=s2,
                            z=float(z),
                            p_value=two_sided_p_value(z),
                            reject=bool(abs(z) > critical_value),
                            p_hat=p_hat,
                            alpha=alpha,
                            critical_value=critical_value)
