"""Exception hierarchy shared by the whole package."""

from __future__ import annotations


class ReglogError(Exception):
    """Base class for every error raised deliberately by this package."""


class ValidationError(ReglogError):
    """A value violates a structural invariant (typing, arity, support, range)."""


class CompositionError(ReglogError):
    """Two pieces were combined along boundaries that do not match."""


class EvalError(ReglogError):
    """Evaluation against a model failed (unknown predicate, shape mismatch)."""


class DslError(ReglogError):
    """A workspace file failed to parse or referenced an unknown name."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
