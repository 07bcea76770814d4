"""Exception hierarchy shared by every module."""

from __future__ import annotations


class VolterraError(Exception):
    """Base class for all errors raised by this package."""


class ScalarKindError(VolterraError, TypeError):
    """Exact and floating-point operands were mixed."""


class IncommensurableSurdError(VolterraError, ValueError):
    """Two square-root multiples with different radicands were added."""


class ParseError(VolterraError):
    """Malformed expression text.

    ``offset`` is a UTF-8 byte offset into the source; ``expected`` is the set
    of token descriptions that would have been accepted there.
    """

    def __init__(self, message: str, text: str, pos: int, expected=()):
        self.text = text
        self.pos = pos
        self.offset = len(text[:pos].encode("utf-8"))
        self.expected = frozenset(expected)
        detail = message
        if self.expected:
            detail += " (expected " + ", ".join(sorted(self.expected)) + ")"
        super().__init__(f"{detail} at byte {self.offset}")
        self.message = message


class EvalError(VolterraError):
    """Expression evaluation failed (unbound variable or domain error)."""


class SpecificationError(VolterraError):
    """A problem or kernel specification is not usable."""


class QuadratureError(VolterraError):
    """Quadrature construction failed or an integrand was non-finite."""

    def __init__(self, message: str, node=None):
        super().__init__(message if node is None else f"{message} (node {node!r})")
        self.node = node


class SolverError(VolterraError):
    """The reduced linear system is singular or too ill-conditioned."""


class OracleError(VolterraError):
    """The trapezoidal reference solver broke down."""


class ProblemFileError(VolterraError):
    """A problem file is unreadable or malformed."""
