"""Exception hierarchy shared by every part of the toolkit."""

from __future__ import annotations

__all__ = [
    "SulcheckError",
    "ModelError",
    "ModelSyntaxError",
    "UndeclaredStateError",
    "DuplicateStateError",
    "NonPositiveCostError",
    "CostOverflowError",
    "SerialityError",
    "EdgeNotPresentError",
    "EdgeAlreadyPresentError",
    "FormulaSyntaxError",
    "FlavorError",
    "ResourceCapExceeded",
    "NoWitnessAvailable",
    "TableGapError",
    "BudgetViolationError",
    "FragmentError",
    "SizeBoundError",
    "QbfError",
]


class SulcheckError(Exception):
    """Base class for all errors raised by this package."""


# -- models ---------------------------------------------------------------


class ModelError(SulcheckError, ValueError):
    pass


class ModelSyntaxError(ModelError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UndeclaredStateError(ModelError):
    def __init__(self, state: str, where: str = ""):
        suffix = f" in {where}" if where else ""
        super().__init__(f"undeclared state {state!r}{suffix}")
        self.state = state


class DuplicateStateError(ModelError):
    def __init__(self, state: str):
        super().__init__(f"duplicate state identifier {state!r}")
        self.state = state


class NonPositiveCostError(ModelError):
    def __init__(self, value: int):
        super().__init__(f"non-positive cost {value}")
        self.value = value


class CostOverflowError(ModelError):
    def __init__(self, value: int):
        super().__init__(f"cost {value} does not fit in an unsigned 64-bit integer")
        self.value = value


class SerialityError(ModelError):
    def __init__(self, state: str):
        super().__init__(f"seriality broken: state {state!r} has no outgoing edge")
        self.state = state


class EdgeNotPresentError(ModelError):
    def __init__(self, edge: tuple[str, str]):
        super().__init__(f"edge {edge[0]} -> {edge[1]} is not present")
        self.edge = edge


class EdgeAlreadyPresentError(ModelError):
    def __init__(self, edge: tuple[str, str]):
        super().__init__(f"edge {edge[0]} -> {edge[1]} is already present")
        self.edge = edge


# -- formulas -------------------------------------------------------------


class FormulaSyntaxError(SulcheckError, ValueError):
    def __init__(self, message: str, position: int | None = None):
        where = f" at offset {position}" if position is not None else ""
        super().__init__(f"{message}{where}")
        self.position = position


class FlavorError(SulcheckError, ValueError):
    """A formula mixes operators of different logics, or the flavor is unknown."""


# -- checking -------------------------------------------------------------


class ResourceCapExceeded(SulcheckError):
    def __init__(self, message: str, positions: int):
        super().__init__(f"{message} (positions explored: {positions})")
        self.positions = positions


class NoWitnessAvailable(SulcheckError):
    pass


class TableGapError(SulcheckError):
    def __init__(self, point: str):
        super().__init__(f"strategy table has no entry for a reachable position at {point!r}")
        self.point = point


class BudgetViolationError(SulcheckError):
    pass


# -- oracles and reductions -----------------------------------------------


class FragmentError(SulcheckError, ValueError):
    pass


class SizeBoundError(SulcheckError, ValueError):
    pass


class QbfError(SulcheckError, ValueError):
    pass
