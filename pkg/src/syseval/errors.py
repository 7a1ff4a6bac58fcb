"""Exception types shared across the library."""


class SysevalError(Exception):
    """Base class for all library errors."""


class ScaleMismatchError(SysevalError):
    """Two estimates (or an estimate and an operation) disagree on the scale."""


class UnknownScaleError(SysevalError):
    """An estimate references something that is not a known scale kind."""


class MissingEstimateError(SysevalError):
    """A selected design alternative lacks the estimate kind an integrator needs."""


class MissingPairError(SysevalError):
    """A compatibility table has no entry for a required pair of alternatives."""


class MissingCellError(SysevalError):
    """An integration-table lookup hit a tuple with no cell."""


class ModelError(SysevalError):
    """A structural problem in a system model, carrying the offending path."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class ModelParseError(SysevalError):
    """Model text could not be parsed; carries every collected error."""

    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))
