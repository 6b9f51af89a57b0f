import argparse

from ..codec import encode_iso, encode_lipmap, load_group, load_iso, load_phi
from ..config.settings import load_settings
from ..generators import make_rng, random_lipmap
from ..lipschitz import delta_embed
from ..monoid import check_monoid_iso, recover_iso, transport_iso
from ..utils.system import resolve_workers
from .base import BaseCommand, CommandResult


class TransportCommand(BaseCommand):
    """Build the monoid isomorphism induced by an isometric group isomorphism.

    The output's ``images`` section is a phi table that ``recover`` reads.
    """

    name = "transport"
    help = "Transport an isometric isomorphism to the Lipschitz monoids"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('G', help='Source group file')
        parser.add_argument('G2', metavar="G'", help='Target group file')
        parser.add_argument('iso', help='Isomorphism witness file')
        parser.add_argument('--samples', type=int, default=10, help='Random maps added to the checked family')
        parser.add_argument('--seed', type=int, default=None, help='Random seed')
        parser.add_argument('--workers', type=int, default=None, help='Threads for evaluating phi')

    def execute(self, args: argparse.Namespace) -> CommandResult:
        gA, gB = load_group(args.G), load_group(args.G2)
        phi = transport_iso(gA, gB, load_iso(args.iso))
        rng = make_rng(args.seed)
        deltas = [delta_embed(gA.space, a) for a in gA.points]
        family = deltas + [random_lipmap(rng, gA.space) for _ in range(args.samples)]
        workers = resolve_workers(args.workers, int(load_settings()['parallel']['max_workers']))
        report = check_monoid_iso(gA, gB, phi, family, workers)

        details = {
            'images': {str(a): encode_lipmap(phi(d))['values'] for a, d in zip(gA.points, deltas)},
            'family': len(family),
            'report': report.to_dict(),
        }
        return CommandResult(report.passed, f"phi checked on {len(family)} maps", details)


class RecoverCommand(BaseCommand):
    name = "recover"
    help = "Recover the group isomorphism from a monoid isomorphism table"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('G', help='Source group file')
        parser.add_argument('G2', metavar="G'", help='Target group file')
        parser.add_argument('phi', help='phi table: images of every delta map')

    def execute(self, args: argparse.Namespace) -> CommandResult:
        gA, gB = load_group(args.G), load_group(args.G2)
        iso = recover_iso(gA, gB, load_phi(args.phi, gA, gB))
        return CommandResult(True, f"recovered isomorphism on {len(iso.forward)} points", encode_iso(iso))
