"""Exception hierarchy shared by every module.

Each error class carries the CLI exit code it maps to, so command dispatch
never has to enumerate exception types.
"""

from __future__ import annotations


class PosetVarError(Exception):
    exit_code = 1


# -- input errors (exit 1) ---------------------------------------------------

class InputError(PosetVarError, ValueError):
    exit_code = 1


class DuplicateLabelError(InputError):
    pass


class UnknownLabelError(InputError, KeyError):
    def __str__(self) -> str:  # KeyError would repr() the message
        return str(self.args[0]) if self.args else ""


class InvalidLabelError(InputError):
    pass


class LabelCollisionError(InputError):
    pass


class CycleDetectedError(InputError):
    pass


class NegativeDimensionError(InputError):
    pass


class PosetSyntaxError(InputError):
    """Malformed poset file; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


# -- precondition violations (exit 2) ----------------------------------------

class PreconditionError(PosetVarError, ValueError):
    exit_code = 2


class NotAdmissibleError(PreconditionError):
    def __init__(self, message: str, violations: list[str] | None = None):
        super().__init__(message)
        self.violations = list(violations or [])


class HypothesisViolatedError(PreconditionError):
    pass


class NotMaximalError(PreconditionError):
    pass


class InvalidDimensionsError(PreconditionError):
    pass


class EmptyVarietyError(PreconditionError):
    pass


class InsufficientPrimesError(PreconditionError):
    pass


class InternalInconsistencyError(PosetVarError, AssertionError):
    exit_code = 2


# -- arithmetic and budget (exit 3 / 4) --------------------------------------

class CheckedOverflowError(PosetVarError, OverflowError):
    exit_code = 3


class BudgetExceededError(PosetVarError, RuntimeError):
    exit_code = 4


class SearchSpaceTooLargeError(BudgetExceededError):
    pass
