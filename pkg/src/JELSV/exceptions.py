from typing import Optional


class JELSVError(ValueError):
    """Base class for every error raised by JELSV."""
    pass


class EmptyInput(JELSVError):

    def __init__(self, label: str = 'sample') -> None:
        super().__init__(f'{label} is empty.')


class NonFiniteValue(JELSVError):

    def __init__(self, index: int, label: str = 'sample') -> None:
        self.index = index
        super().__init__(f'{label}: non-finite value at index {index}.')


class NegativeValue(JELSVError):

    def __init__(self, index: int, label: str = 'sample') -> None:
        self.index = index
        super().__init__(f'{label}: negative value at index {index}. Use the allow-negative override to accept it.')


class NonPositivePower(JELSVError):

    def __init__(self, power: float) -> None:
        self.power = power
        super().__init__(f'Power of the stop-loss moment must be positive, got {power}.')


class InsufficientSample(JELSVError):

    def __init__(self, label: str, size: int, required: int) -> None:
        self.label = label
        self.size = size
        self.required = required
        super().__init__(f'{label} has {size} observation(s), at least {required} required.')


class DegenerateData(JELSVError):
    """All pooled observations are identical."""
    pass


class HullViolation(JELSVError):
    """Zero is not strictly inside the convex hull of the pseudo-values."""
    pass


class SolverFailure(JELSVError):
    """The multiplier solver exhausted its iteration budget."""
    pass


class NegativeStatistic(JELSVError):

    def __init__(self, statistic: float) -> None:
        self.statistic = statistic
        super().__init__(f'Chi-square statistic must be non-negative, got {statistic}.')


class DegenerateVariance(JELSVError):
    """The plug-in null variance is zero, the normal test is undefined."""
    pass


class OutOfRange(JELSVError):

    def __init__(self, name: str, value: float, bounds: str = '(0, 1)') -> None:
        self.name = name
        self.value = value
        super().__init__(f'{name} must lie in {bounds}, got {value}.')


class InvalidParameters(JELSVError):
    pass


class ParseError(JELSVError):

    def __init__(self, path: str, line: Optional[int], message: str) -> None:
        self.path = path
        self.line = line
        location = f'{path}, line {line}' if line is not None else path
        super().__init__(f'{location}: {message}')


class ConfigError(JELSVError):

    def __init__(self, key: str, message: str) -> None:
        self.key = key
        super().__init__(f'config key "{key}": {message}')
