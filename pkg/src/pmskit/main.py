#!/usr/bin/env python3
"""
pmskit - command-line front end
"""

import argparse
import logging
import sys
from typing import List, Optional, Tuple

from .commands import COMMANDS, Command
from .config.settings import APP_DISPLAY_NAME, EXIT_USAGE, VERSION, debug_enabled
from .utils.file_operations import dump_json

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser with one sub-parser per verb."""
    parser = argparse.ArgumentParser(
        prog='pmskit',
        description=f'{APP_DISPLAY_NAME} - exact computations on probabilistic metric spaces',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  pmskit validate space.json                 # Check the space (and group) axioms
  pmskit conv --tf sup:product F.json L.json # Exact sup-convolution
  pmskit levy F.json L.json --tol 1/1024     # Sibley distance
  pmskit extend space.json partial.json      # Mac Shane extension
  pmskit transport G.json G2.json iso.json   # Monoid isomorphism from a group iso
  pmskit recover G.json G2.json phi.json     # Group iso back from the monoid iso
  pmskit bench --sizes 64,256 --tnorm min    # Kernel timings

Exit status: 0 pass, 1 axiom or structural failure, 2 usage or schema error.
        """
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {VERSION}')
    parser.add_argument('-v', '--verbose', action='store_true', help='Debug logging on stderr')

    subparsers = parser.add_subparsers(dest='command', metavar='command')
    subparsers.required = True
    for command in COMMANDS:
        sub = subparsers.add_parser(command.name, help=command.help, description=command.help)
        command.configure(sub)
    return parser


def configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose or debug_enabled() else logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')


def parse_command(argv: Optional[List[str]] = None) -> Tuple[Command, bool]:
    """Parse argv into a Command; argparse exits with status 2 on bad input."""
    args = build_parser().parse_args(argv)
    return Command(args.command, args), args.verbose


def run(cmd: Command) -> Tuple[int, str, str]:
    """Run a parsed command.

    Returns:
        Exit status, the JSON document for stdout and a one-line summary
    """
    handler = next((c for c in COMMANDS if c.name == cmd.verb), None)
    if handler is None:
        return EXIT_USAGE, "", f"Unknown command: {cmd.verb}"
    result = handler.run(cmd.args)
    document = {'command': cmd.verb, 'status': result.status, **result.details}
    return result.status, dump_json(document), result.message


def main(argv: Optional[List[str]] = None) -> None:
    cmd, verbose = parse_command(argv)
    configure_logging(verbose)
    status, document, summary = run(cmd)
    if document:
        print(document)
    marker = "✅" if status == 0 else "❌"
    print(f"{marker} {cmd.verb}: {summary}", file=sys.stderr)
    sys.exit(status)


if __name__ == '__main__':
    main()
