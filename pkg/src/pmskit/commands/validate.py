import argparse

from ..codec import load_space
from ..spaces import ProbGroup, validate_invariant_group, validate_space
from .base import BaseCommand, CommandResult


class ValidateCommand(BaseCommand):
    """Check the space axioms, and the group axioms when a group is present."""

    name = "validate"
    help = "Validate a space or group file"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('file', help='Space or group file (JSON or YAML)')

    def execute(self, args: argparse.Namespace) -> CommandResult:
        parsed = load_space(args.file, validate=False)
        space = parsed.space if isinstance(parsed, ProbGroup) else parsed
        report = validate_space(space)
        if isinstance(parsed, ProbGroup):
            report = report.merge(validate_invariant_group(parsed))

        kind = "group" if isinstance(parsed, ProbGroup) else "space"
        details = {'kind': kind, 'points': len(space.points), 'tf': space.tf.tag, 'report': report.to_dict()}
        if report.passed:
            return CommandResult(True, f"{kind} with {len(space.points)} points passes all axioms", details)
        v = report.first()
        return CommandResult(False, f"{v.axiom} fails at {', '.join(map(str, v.witness))}", details)
