import argparse
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, Optional

from ..codec import parse_rational
from ..config.settings import EXIT_OK, EXIT_USAGE, EXIT_VIOLATION
from ..distributions import WeakTolerance
from ..errors import PmsError, ReportError, SchemaError, StructuralError
from ..tnorms import TNorm, TriangleFn

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Command:
    """A parsed command line: the verb and its verb-specific arguments."""
    verb: str
    args: argparse.Namespace


class CommandResult:
    """Result of running a command.

    Provides the outcome of a command, the JSON document written to stdout
    and the exit status it maps to.
    """

    def __init__(self, success: bool, message: str, details: Dict[str, Any] = None,
                 status: Optional[int] = None) -> None:
        """Initialize command result.

        Args:
            success: Whether every check passed
            message: One-line human summary
            details: JSON-ready document for stdout
            status: Exit status; derived from ``success`` when omitted
        """
        self.success = success
        self.message = message
        self.details = details or {}
        self.status = status if status is not None else (EXIT_OK if success else EXIT_VIOLATION)

    def __repr__(self) -> str:
        return f"CommandResult(success={self.success}, status={self.status}, message='{self.message}')"


class BaseCommand(ABC):
    """Base class for all verbs.

    Subclasses declare their arguments in :meth:`configure` and do their
    work in :meth:`execute`; :meth:`run` turns domain errors into results
    with the right exit status.
    """

    name: str = ""
    help: str = ""

    @abstractmethod
    def configure(self, parser: argparse.ArgumentParser) -> None:
        """Add verb-specific arguments to the sub-parser."""

    @abstractmethod
    def execute(self, args: argparse.Namespace) -> CommandResult:
        """Run the verb.

        Returns:
            CommandResult with the document to print
        """

    def run(self, args: argparse.Namespace) -> CommandResult:
        logger.info(f"Running {self.name}")
        try:
            result = self.execute(args)
        except SchemaError as e:
            logger.warning(f"{self.name}: {e}")
            return CommandResult(False, str(e), {'error': 'schema', 'message': str(e)}, EXIT_USAGE)
        except ReportError as e:
            logger.warning(f"{self.name}: {e}")
            return CommandResult(False, str(e), {
                'error': type(e).__name__, 'message': str(e), 'report': e.report.to_dict()})
        except StructuralError as e:
            logger.warning(f"{self.name}: {e}")
            return CommandResult(False, str(e), {
                'error': 'structural', 'message': str(e), 'point': None if e.point is None else str(e.point)})
        except PmsError as e:
            logger.warning(f"{self.name}: {e}")
            return CommandResult(False, str(e), {'error': type(e).__name__, 'message': str(e)})
        logger.info(f"Finished {self.name}: status {result.status}")
        return result


def rational_arg(text: str):
    """argparse type for ``p/q`` rationals."""
    try:
        return parse_rational(text)
    except SchemaError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def tolerance_arg(text: str) -> WeakTolerance:
    """argparse type for a bisection width in (0, 1]."""
    try:
        return WeakTolerance(rational_arg(text))
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def triangle_arg(text: str) -> TriangleFn:
    try:
        return TriangleFn.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def tnorm_arg(text: str) -> TNorm:
    try:
        return TNorm.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def sizes_arg(text: str):
    try:
        sizes = [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Sizes must be comma-separated integers, got {text!r}") from None
    if not sizes or any(n < 0 for n in sizes):
        raise argparse.ArgumentTypeError(f"Sizes must be nonnegative integers, got {text!r}")
    return sizes
