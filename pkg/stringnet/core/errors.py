"""Exceptions raised by the string-net engine.

Every error is a ``ValueError`` so callers that only care about bad input can
catch that, while the command line maps the subclasses onto exit codes.
"""

from typing import Any, Dict, Optional, Sequence


class StringNetError(ValueError):
    """Base class for all engine errors."""


class BackendMismatchError(StringNetError):
    """Objects or morphisms from different backends were combined."""


class CompositionError(StringNetError):
    """Two morphisms were composed across different words."""

    def __init__(self, outer: Any, inner: Any):
        self.outer = outer
        self.inner = inner
        super().__init__(f"Cannot compose: domain {outer} does not equal codomain {inner}.")


class AxiomError(StringNetError):
    """Structure constants violate an axiom."""

    def __init__(self, identity: str, indices: Sequence[int], detail: str = ""):
        self.identity = identity
        self.indices = tuple(indices)
        message = f"{identity} fails at indices {self.indices}"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class ParseError(StringNetError):
    """A structure or diagram file is malformed."""

    def __init__(self, message: str, path: Optional[str] = None, line: int = 0, column: int = 0):
        self.path = path
        self.line = line
        self.column = column
        where = f"{path or '<input>'}:{line}:{column}"
        super().__init__(f"{where}: {message}")


class ColoringError(StringNetError):
    """A coupon's morphism does not match the colors of its edges."""

    def __init__(self, node: str, expected: Any, actual: Any):
        self.node = node
        super().__init__(f"Node {node}: coloring expects {expected} but the coupon has {actual}.")


class ValidationError(StringNetError):
    """An operation was handed a diagram that failed validation."""


class ReductionNotSupported(StringNetError):
    """The cylinder net lies outside the class handled by the reducer."""


class LawViolation(StringNetError):
    """An algebraic identity failed exactly."""

    def __init__(self, law: str, detail: Optional[Dict[str, Any]] = None):
        self.law = law
        self.detail = dict(detail or {})
        suffix = ", ".join(f"{k}={v}" for k, v in self.detail.items())
        super().__init__(f"{law} violated" + (f" ({suffix})" if suffix else ""))


class UniversalityError(StringNetError):
    """A coend presentation is not universal for the given probes."""
