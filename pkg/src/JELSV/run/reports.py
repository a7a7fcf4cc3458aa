import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from ..jel import JelSolution
from ..normal import NormalTestResult
from ..semivariance import SemivarianceEstimate
from ..utils import CONVENTIONS, DescriptiveStats, format_describe_text

REJECT = 'reject'
REJECT_BOUNDARY = 'reject (boundary)'
FAIL_TO_REJECT = 'fail to reject'


@dataclass(frozen=True)
class TestReport:
    """
    Result of the test command. The verdict follows the JEL result when it is present,
    the normal test otherwise.
    """

    __test__ = False  # not a pytest class

    n1: int
    n2: int
    delta: float
    alpha: float
    jel: Optional[JelSolution] = None
    normal: Optional[NormalTestResult] = None
    warnings: List[str] = field(default_factory=list)

    @property
    def reject(self) -> bool:
        if self.jel is not None:
            return self.jel.reject
        return self.normal is not None and self.normal.reject

    @property
    def verdict(self) -> str:
        if self.jel is not None and self.jel.is_boundary:
            return REJECT_BOUNDARY
        return REJECT if self.reject else FAIL_TO_REJECT


def _g(value: float) -> str:
    return f'{value:.6g}'


def _row(name: str, value: str) -> str:
    return f'{name:<28}{value:>16}\n'


def format_test_text(report: TestReport) -> str:
    """
    Aligned text report, 6 significant digits
    :param report: TestReport
    :return: str
    """

    lines = [_row('n1', str(report.n1)), _row('n2', str(report.n2)), _row('delta', _g(report.delta))]
    if report.jel is not None:
        jel = report.jel
        lines += [
            _row('lambda', _g(jel.lam)),
            _row('-2 log R(delta)', _g(jel.statistic)),
            _row('chi2(1) critical value', _g(jel.critical_value)),
            _row('p-value (jel)', jel.p_value_text),
        ]
    if report.normal is not None:
        normal = report.normal
        lines += [
            _row('S^2', _g(normal.s2)),
            _row('z', _g(normal.z)),
            _row('normal critical value', _g(normal.critical_value)),
            _row('p-value (normal)', _g(normal.p_value)),
        ]
        if report.jel is not None:
            lines.append(_row('verdict (normal)', REJECT if normal.reject else FAIL_TO_REJECT))
    lines += [_row('alpha', _g(report.alpha)), _row('verdict', report.verdict)]
    lines += [f'warning: {message}\n' for message in report.warnings]
    return ''.join(lines)


def report_to_dict(report: TestReport) -> Dict[str, Any]:
    result: Dict[str, Any] = {
        'n1': report.n1,
        'n2': report.n2,
        'delta': float(report.delta),
        'alpha': float(report.alpha),
        'verdict': report.verdict,
        'reject': report.reject,
        'warnings': list(report.warnings),
    }
    if report.jel is not None:
        jel = report.jel
        result['jel'] = {
            'lambda': float(jel.lam),
            'statistic': float(jel.statistic),
            'p_value': float(jel.p_value),
            'critical_value': float(jel.critical_value),
            'reject': jel.reject,
            'status': jel.status.value,
            'iterations': jel.iterations,
        }
    if report.normal is not None:
        normal = report.normal
        result['normal'] = {
            'z': float(normal.z),
            's2': float(normal.s2),
            'p_value': float(normal.p_value),
            'critical_value': float(normal.critical_value),
            'p_hat': float(normal.p_hat),
            'reject': normal.reject,
        }
    return result


def describe_to_dict(ds: DescriptiveStats) -> Dict[str, Any]:
    return {'statistics': ds.to_dict(), 'metadata': dict(CONVENTIONS)}


def semivar_to_dict(estimate: SemivarianceEstimate, n: int) -> Dict[str, Any]:
    return {'n': n, 'target': estimate.target, 'power': estimate.power, 'value': estimate.value}


def to_json(payload: Dict[str, Any]) -> str:
    """JSON text. Floats are written with repr, inf and nan as Infinity and NaN."""
    return json.dumps(payload, indent=2) + '\n'


def format_semivar_text(estimate: SemivarianceEstimate) -> str:
    return _g(estimate.value) + '\n'


__all__ = [
    'FAIL_TO_REJECT', 'REJECT', 'REJECT_BOUNDARY', 'TestReport', 'describe_to_dict', 'format_describe_text',
    'format_semivar_text', 'format_test_text', 'semivar_to_dict', 'report_to_dict', 'to_json'
]
