import sys
import time

LEVELS = {'DEBUG': 10, 'INFO': 20, 'WARNING': 30, 'ERROR': 40, 'CRITICAL': 50}

# stdout is reserved for reports, every log line goes to stderr
_threshold = LEVELS['INFO']


def set_level(level: str) -> None:
    """
    Set the minimum level written to stderr
    :param level: str, one of DEBUG, INFO, WARNING, ERROR, CRITICAL
    :return: None
    """
    global _threshold
    if level.upper() not in LEVELS:
        raise ValueError(f'Unknown log level: {level}.')
    _threshold = LEVELS[level.upper()]


def is_enabled(level: str) -> bool:
    return LEVELS[level.upper()] >= _threshold


def get_current_time() -> str:
    return time.strftime('%H:%M:%S', time.localtime())


def write_direct_message(level: str, message: str) -> None:
    if LEVELS[level] < _threshold:
        return
    curr_time_str = get_current_time()
    sys.stderr.write(f'{curr_time_str} --- {level}: {message}\n')
    sys.stderr.flush()


def debug(message: str):
    write_direct_message('DEBUG', message)


def info(message: str):
    write_direct_message('INFO', message)


def warning(message: str):
    write_direct_message('WARNING', message)


def error(message: str):
    write_direct_message('ERROR', message)


def critical(message: str):
    write_direct_message('CRITICAL', message)


__all__ = ['debug', 'info', 'warning', 'error', 'critical', 'set_level', 'is_enabled']
