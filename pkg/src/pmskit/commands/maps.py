import argparse

from ..codec import encode_lipmap, load_map, load_space
from ..lipschitz import is_one_lipschitz, mcshane_extend
from ..spaces import ProbGroup, ProbSpace
from .base import BaseCommand, CommandResult


def _space(path: str) -> ProbSpace:
    parsed = load_space(path)
    return parsed.space if isinstance(parsed, ProbGroup) else parsed


class LipcheckCommand(BaseCommand):
    name = "lipcheck"
    help = "Check that a map is probabilistic 1-Lipschitz"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('space', help='Space file')
        parser.add_argument('map', help='Map file')

    def execute(self, args: argparse.Namespace) -> CommandResult:
        space, values = load_map(args.map, _space(args.space))
        report = is_one_lipschitz(space, values)
        details = {'points': len(space.points), 'report': report.to_dict()}
        if report.passed:
            return CommandResult(True, "map is 1-Lipschitz", details)
        v = report.first()
        return CommandResult(False, f"{v.axiom} fails at {', '.join(map(str, v.witness))}", details)


class ExtendCommand(BaseCommand):
    """Mac Shane extension of a partial 1-Lipschitz map to the whole space."""

    name = "extend"
    help = "Extend a partial 1-Lipschitz map to the whole space"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('space', help='Space file')
        parser.add_argument('partial_map', metavar='partial-map', help='Map file listing only its domain')

    def execute(self, args: argparse.Namespace) -> CommandResult:
        space, partial = load_map(args.partial_map, _space(args.space))
        extension = mcshane_extend(space, list(partial), partial)
        report = is_one_lipschitz(space, extension)
        details = {'domain': [str(p) for p in partial], **encode_lipmap(extension), 'report': report.to_dict()}
        return CommandResult(report.passed, f"extended from {len(partial)} to {len(space.points)} points", details)
