from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple, Union

import numpy as np
from scipy.optimize import brentq
from scipy.special import erfc

from ..exceptions import (DegenerateData, HullViolation, InsufficientSample, NegativeStatistic, OutOfRange,
                          SolverFailure)
from ..log import debug, warning
from ..samples import Sample, pool
from ..ustat import PseudoValues, jackknife_pseudovalues

MAX_ITER = 200
MIN_SIZE = 3
EDGE_MARGIN = 1e-12
# smallest positive double, printed when the p-value underflows
P_VALUE_FLOOR = 2.2e-308


class JelStatus(str, Enum):
    OK = 'ok'
    BOUNDARY = 'boundary'


@dataclass(frozen=True, eq=False)
class JelSolution:
    """
    Solution of the jackknife empirical likelihood problem.
    For a boundary outcome (zero outside the hull of the pseudo-values),
    statistic is +inf, p_value is 0 and lam is nan.
    """

    lam: float
    weights: np.ndarray
    statistic: float
    p_value: float = float('nan')
    reject: bool = False
    alpha: float = float('nan')
    critical_value: float = float('nan')
    status: JelStatus = JelStatus.OK
    iterations: int = 0
    delta: float = float('nan')
    nu: np.ndarray = field(default_factory=lambda: np.empty(0))

    @property
    def is_boundary(self) -> bool:
        return self.status is JelStatus.BOUNDARY

    @property
    def p_value_text(self) -> str:
        if self.p_value == 0.0:
            return f'< {P_VALUE_FLOOR:.1e}'
        return f'{self.p_value:.6g}'


# ------------------------------------
# Lagrange multiplier
# ------------------------------------
def _as_array(nu: Union[PseudoValues, np.ndarray]) -> np.ndarray:
    return np.asarray(nu.nu if isinstance(nu, PseudoValues) else nu, dtype=np.float64)


def _constraint(lam: float, nu: np.ndarray) -> Tuple[float, float]:
    """g(lam) = mean(nu / (1 + lam nu)) and its derivative."""
    denom = 1.0 + lam * nu
    g = np.mean(nu / denom)
    dg = -np.mean(nu * nu / (denom * denom))
    return float(g), float(dg)


def _solve_lambda(nu: np.ndarray) -> Tuple[float, int]:
    nu_min, nu_max = float(nu.min()), float(nu.max())
    if not (nu_min < 0.0 < nu_max):
        raise HullViolation(f'zero is not strictly inside [{nu_min}, {nu_max}], the multiplier has no solution.')

    # g decreases from +inf to -inf on (-1/max, -1/min)
    lo, hi = -1.0 / nu_max, -1.0 / nu_min
    width = hi - lo
    lo, hi = lo + EDGE_MARGIN * width, hi - EDGE_MARGIN * width
    tolerance = 1e-10 * max(1.0, float(np.std(nu)))

    g_lo, _ = _constraint(lo, nu)
    g_hi, _ = _constraint(hi, nu)
    if not (g_lo > 0.0 > g_hi):
        raise SolverFailure(f'no sign change of the constraint on [{lo}, {hi}].')

    lam = 0.0
    for iteration in range(1, MAX_ITER + 1):
        g, dg = _constraint(lam, nu)
        if abs(g) <= tolerance:
            return lam, iteration
        if g > 0.0:
            lo = lam
        else:
            hi = lam
        step = lam - g / dg if dg < 0.0 else np.nan
        # fall back to bisection whenever Newton leaves the bracket
        lam = step if lo < step < hi else 0.5 * (lo + hi)
        debug(f'iteration {iteration}: lambda {lam}, g {g}')
        if hi - lo <= 4.0 * np.finfo(np.float64).eps * max(abs(lo), abs(hi)):
            # bracket at floating point resolution, no better root is representable
            debug(f'bracket collapsed at lambda {lam}, residual {g}.')
            return lam, iteration
    raise SolverFailure(f'multiplier did not converge within {MAX_ITER} iterations.')


def solve_lambda(nu: Union[PseudoValues, np.ndarray]) -> float:
    """
    Root of (1/n) sum nu_i / (1 + lam nu_i) = 0 on (-1/max(nu), -1/min(nu)).
    Safeguarded Newton with bisection fallback.
    :param nu: PseudoValues or ndarray
    :return: float, the Lagrange multiplier
    """
    lam, _ = _solve_lambda(_as_array(nu))
    return lam


def jel_statistic(nu: Union[PseudoValues, np.ndarray]) -> JelSolution:
    """
    -2 log R = 2 sum log(1 + lam nu_i) with weights p_i = 1 / (n (1 + lam nu_i))
    :param nu: PseudoValues or ndarray
    :return: JelSolution with lam, weights, statistic and iteration count
    """

    values = _as_array(nu)
    lam, iterations = _solve_lambda(values)
    terms = 1.0 + lam * values
    weights = 1.0 / (values.shape[0] * terms)
    statistic = max(0.0, 2.0 * float(np.sum(np.log1p(lam * values))))
    return JelSolution(lam=lam, weights=weights, statistic=statistic, iterations=iterations, nu=values)


# ------------------------------------
# Calibration
# ------------------------------------
def chi2_1_sf(s: float) -> float:
    """
    Survival function of chi-square with one degree of freedom, erfc(sqrt(s / 2))
    :param s: float, non-negative statistic
    :return: float
    """
    if s < 0:
        raise NegativeStatistic(s)
    if np.isinf(s):
        return 0.0
    return float(erfc(np.sqrt(s / 2.0)))


def chi2_1_isf(alpha: float) -> float:
    """
    Upper alpha point of chi-square(1) by bisection on chi2_1_sf
    :param alpha: float in (0, 1)
    :return: float
    """
    if not 0.0 < alpha < 1.0:
        raise OutOfRange('alpha', alpha)
    upper = 1.0
    while chi2_1_sf(upper) > alpha:
        upper *= 2.0
    return float(brentq(lambda s: chi2_1_sf(s) - alpha, 0.0, upper, xtol=1e-14, rtol=1e-15, maxiter=MAX_ITER))


def _agreeing_p_value(p_value: float, alpha: float, reject: bool) -> float:
    """
    The p-value rule p < alpha must give the same verdict as the quantile rule.
    They can only disagree when the statistic is within root-finding tolerance of
    the critical value, the p-value is then moved to the matching side of alpha.
    """
    if reject and p_value >= alpha:
        debug(f'p-value {p_value} moved below alpha {alpha} to match the quantile rule.')
        return float(np.nextafter(alpha, 0.0))
    if not reject and p_value < alpha:
        debug(f'p-value {p_value} moved up to alpha {alpha} to match the quantile rule.')
        return alpha
    return p_value


def jel_test(x: Sample, y: Sample, alpha: float = 0.05) -> JelSolution:
    """
    Jackknife empirical likelihood ratio test of equal upper semivariance
    :param x: Sample
    :param y: Sample
    :param alpha: float, significance level
    :return: JelSolution
    """

    if not 0.0 < alpha < 1.0:
        raise OutOfRange('alpha', alpha)
    for sample in (x, y):
        if len(sample) < MIN_SIZE:
            raise InsufficientSample(sample.label, len(sample), MIN_SIZE)
    if pool(x, y).is_degenerate:
        raise DegenerateData('all pooled observations are identical, the test is undefined.')

    pseudo = jackknife_pseudovalues(x, y)
    critical_value = chi2_1_isf(alpha)

    try:
        solution = jel_statistic(pseudo)
    except HullViolation as err:
        warning(f'{err} Reporting a boundary rejection.')
        return JelSolution(lam=float('nan'),
                           weights=np.empty(0),
                           statistic=float('inf'),
                           p_value=0.0,
                           reject=True,
                           alpha=alpha,
                           critical_value=critical_value,
                           status=JelStatus.BOUNDARY,
                           delta=pseudo.full_delta,
                           nu=pseudo.nu)

    reject = solution.statistic > critical_value
    p_value = _agreeing_p_value(chi2_1_sf(solution.statistic), alpha, reject)
    return JelSolution(lam=solution.lam,
                       weights=solution.weights,
                       statistic=solution.statistic,
                       p_value=p_value,
                       reject=reject,
                       alpha=alpha,
                       critical_value=critical_value,
                       status=JelStatus.OK,
                       iterations=solution.iterations,
                       delta=pseudo.full_delta,
                       nu=pseudo.nu)
