import gzip
import sys
from typing import IO, List, Tuple

import numpy as np
import pandas as pd
import yaml

from ..exceptions import EmptyInput, JELSVError, ParseError
from ..log import debug, is_enabled, warning
from ..samples import Sample, validate_sample


def write_version_info() -> None:
    """
    Write version information to stderr, skipped below INFO
    """
    if not is_enabled('INFO'):
        return
    from .. import __version__
    template = f'''##################################################################################

          ██ ███████ ██       ███████ ██    ██
          ██ ██      ██       ██      ██    ██
          ██ █████   ██       ███████ ██    ██
     ██   ██ ██      ██            ██  ██  ██
      █████  ███████ ███████  ███████   ████

                        version: {__version__}

##################################################################################
'''

    sys.stderr.write(template)
    sys.stderr.flush()


def open_text(filename: str, mode: str = 'r') -> IO[str]:
    """
    Open a plain or gzip compressed text file
    :param filename: file name, compressed when it ends with .gz
    :param mode: 'r' or 'w'
    :return: file handle
    """
    if filename.endswith('.gz'):
        return gzip.open(filename, f'{mode}t')  # type: ignore
    return open(filename, mode)


def read_yaml_file(yaml_file: str) -> dict:
    with open_text(yaml_file) as fhd:
        params = yaml.load(fhd, Loader=yaml.SafeLoader)
    return params


# ------------------------------------
# CSV ingestion
# ------------------------------------
def _is_number(field: str) -> bool:
    try:
        float(field)
    except ValueError:
        return False
    return True


def read_value_column(filename: str) -> Tuple[List[str], List[int], str]:
    """
    Read a one-value-per-line CSV file
    :param filename: file name
    :return: raw fields, their 1-based line numbers, the header ('' when absent)

    1) lines starting with '#' and blank lines are skipped
    2) the first remaining line is a header when it is not numeric
    """

    fields: List[str] = []
    line_numbers: List[int] = []
    header = ''
    try:
        fhd = open_text(filename)
    except OSError as err:
        raise ParseError(filename, None, f'cannot open file ({err.strerror}).') from err
    with fhd:
        for line_number, line in enumerate(fhd, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith('#'):
                continue
            field = stripped
            if not fields and not header and not _is_number(field):
                header = field
                continue
            fields.append(field)
            line_numbers.append(line_number)
    return fields, line_numbers, header


def load_values(filename: str, allow_negative: bool = False, label: str = '') -> Sample:
    """
    Load a sample from a CSV file
    :param filename: file name, plain or .gz
    :param allow_negative: bool, accept negative observations
    :param label: str, sample label, defaults to the header or the file name
    :return: Sample
    """

    fields, line_numbers, header = read_value_column(filename)
    label = label or header or filename
    if not fields:
        raise ParseError(filename, None, 'no observations found.')

    values = pd.to_numeric(pd.Series(fields, dtype=object), errors='coerce').to_numpy(dtype=np.float64)
    # literal nan is left to validate_sample, which reports it as non-finite
    literal_nan = np.array([field.lower().lstrip('+-') == 'nan' for field in fields])
    bad = np.flatnonzero(np.isnan(values) & ~literal_nan)
    if bad.shape[0] > 0:
        first = int(bad[0])
        raise ParseError(filename, line_numbers[first], f'cannot parse "{fields[first]}" as a number.')

    try:
        sample = validate_sample(values, allow_negative=allow_negative, label=label)
    except EmptyInput as err:
        raise ParseError(filename, None, str(err)) from err
    except JELSVError as err:
        index = getattr(err, 'index', None)
        if index is None:
            raise
        raise ParseError(filename, line_numbers[index], str(err)) from err
    debug(f'{filename}: {len(sample)} observations loaded as "{label}".')
    if len(sample) < 3:
        warning(f'{filename}: only {len(sample)} observation(s).')
    return sample


__all__ = ['write_version_info', 'open_text', 'read_yaml_file', 'read_value_column', 'load_values']
