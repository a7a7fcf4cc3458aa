from dataclasses import asdict, dataclass
from typing import Dict, List, Tuple

import numpy as np
from scipy import stats

from ..samples import Sample

# row order of the descriptive statistics table
ROWS = ('n', 'mean', 'sd', 'range', 'skewness', 'kurtosis')
ROW_NAMES = {
    'n': 'n',
    'mean': 'Mean',
    'sd': 'SD',
    'range': 'Range',
    'skewness': 'Skewness',
    'kurtosis': 'Kurtosis (non-excess)',
}
CONVENTIONS = {
    'sd': 'sample standard deviation, denominator n - 1',
    'skewness': 'm3 / m2^(3/2), central moments with denominator n',
    'kurtosis': 'm4 / m2^2, central moments with denominator n, non-excess',
}


@dataclass(frozen=True)
class DescriptiveStats:
    n: int
    mean: float
    sd: float
    range: float
    skewness: float
    kurtosis: float

    def rows(self) -> List[Tuple[str, float]]:
        return [(ROW_NAMES[key], getattr(self, key)) for key in ROWS]

    def to_dict(self) -> Dict:
        return asdict(self)


def descriptive_stats(s: Sample) -> DescriptiveStats:
    """
    Descriptive statistics of a sample
    :param s: Sample
    :return: DescriptiveStats, sd is nan for a single observation,
             skewness and kurtosis are nan for constant data
    """

    values = s.values
    n = len(s)
    sd = float(np.std(values, ddof=1)) if n > 1 else float('nan')
    if np.ptp(values) == 0:
        skewness = kurtosis = float('nan')
    else:
        skewness = float(stats.skew(values, bias=True))
        kurtosis = float(stats.kurtosis(values, fisher=False, bias=True))
    return DescriptiveStats(n=n,
                            mean=float(np.mean(values)),
                            sd=sd,
                            range=float(np.ptp(values)),
                            skewness=skewness,
                            kurtosis=kurtosis)


def format_describe_text(ds: DescriptiveStats) -> str:
    """
    Aligned two-column table, 6 significant digits
    :param ds: DescriptiveStats
    :return: str
    """
    return ''.join(f'{name:<24}{value:>14.6g}\n' for name, value in ds.rows())


__all__ = ['CONVENTIONS', 'DescriptiveStats', 'descriptive_stats', 'format_describe_text']
