"""Exception hierarchy shared across the package."""


class FlowcastError(Exception):
    """Base class for all errors raised by this package."""


class PanelParseError(FlowcastError):
    """Malformed CSV row; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DuplicateRecordError(FlowcastError):
    pass


class IncompletePanelError(FlowcastError):
    pass


class HorizonOrderError(FlowcastError):
    pass


class BoxCoxDomainError(FlowcastError):
    """Non-positive value fed to the Box-Cox transform."""

    def __init__(self, message: str, period=None, event=None):
        super().__init__(message)
        self.period = period
        self.event = event


class ZeroVarianceError(FlowcastError):
    pass


class SampleTooSmallError(FlowcastError):
    pass


class ShapeError(FlowcastError):
    pass


class SingularMatrixError(FlowcastError):
    pass


class ConvergenceError(FlowcastError):
    def __init__(self, message: str, kkt_residual=None):
        super().__init__(message)
        self.kkt_residual = kkt_residual


class RankError(FlowcastError):
    pass


class DegenerateInputError(FlowcastError):
    pass


class SyntheticSpecError(FlowcastError):
    pass
