"""Exception hierarchy for pmskit.

Axiom failures are reported through :class:`pmskit.report.Report`; the
exceptions below are for inputs an operation cannot work with at all.
"""

from typing import Any, Optional


class PmsError(ValueError):
    """Base class for all pmskit domain errors."""


class SchemaError(PmsError):
    """Text or file does not match a documented encoding.

    Args:
        message: What went wrong
        source: File path or other origin of the text
        line: 1-based line of the problem, when known
        column: 1-based column of the problem, when known
        field: Dotted field path inside the document, when known
    """

    def __init__(self, message: str, source: Optional[str] = None,
                 line: Optional[int] = None, column: Optional[int] = None,
                 field: Optional[str] = None) -> None:
        self.source = source
        self.line = line
        self.column = column
        self.field = field
        location = source or "<input>"
        if line is not None:
            location += f":{line}"
            if column is not None:
                location += f":{column}"
        if field:
            location += f" [{field}]"
        super().__init__(f"{location}: {message}")


class MetricError(PmsError):
    """A classical metric table is not a metric, or the Heaviside-sum law fails."""

    def __init__(self, message: str, witness: Any = None) -> None:
        self.witness = witness
        super().__init__(message if witness is None else f"{message} (witness: {witness!r})")


class PreconditionError(PmsError):
    """An operation's hypothesis does not hold for the given arguments."""


class ReportError(PmsError):
    """An error that carries the Report explaining it."""

    def __init__(self, message: str, report: Any) -> None:
        self.report = report
        super().__init__(message)


class LipschitzError(ReportError):
    """A map offered as 1-Lipschitz is not."""


class IsomorphismError(ReportError):
    """An isomorphism witness is not an isometric group isomorphism."""


class StructuralError(PmsError):
    """A monoid isomorphism oracle does not send delta maps to delta maps."""

    def __init__(self, message: str, point: Any = None) -> None:
        self.point = point
        super().__init__(message)


class AxiomError(ReportError):
    """A parsed space or group fails its axioms."""
