# core/errors.py
from __future__ import annotations
from typing import Any, Optional, Tuple


class KrasnerError(Exception):
    """Root of every error raised by the toolkit."""


class UsageError(KrasnerError, ValueError):
    """Bad arguments or a violated precondition."""


class HypothesisError(UsageError):
    """A theorem's hypothesis does not hold for the given instance."""

    def __init__(self, hypothesis: str, message: str):
        super().__init__(f"{hypothesis}: {message}")
        self.hypothesis = hypothesis


class CapExceededError(UsageError):
    def __init__(self, message: str, required: int):
        super().__init__(f"{message} (required cap: {required})")
        self.required = required


class NotStrictError(UsageError):
    """Structure fails strict validation and weak mode was not allowed."""

    def __init__(self, name: str, failed: Tuple[str, ...]):
        super().__init__(
            f"structure '{name}' is not a strict Krasner hyperring "
            f"(failed: {', '.join(failed)}); pass --allow-weak to override"
        )
        self.failed = failed


class FormatError(KrasnerError, ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


class ConstructionError(KrasnerError, RuntimeError):
    """A construction (localization, quotient) was refused."""


class EquivalenceLawError(ConstructionError):
    def __init__(self, law: str, witness: Any):
        super().__init__(f"relation is not {law}: {witness}")
        self.law = law
        self.witness = witness


class WellDefinednessError(ConstructionError):
    def __init__(self, operation: str, first: Any, second: Any):
        super().__init__(
            f"{operation} depends on representatives: {first} vs {second}"
        )
        self.operation = operation
        self.first = first
        self.second = second


class PartitionError(ConstructionError):
    pass


class InvariantViolation(KrasnerError, AssertionError):
    """A postcondition promised by an operation did not hold."""
