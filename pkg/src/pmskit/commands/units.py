import argparse
import logging

from ..codec import encode_lipmap, encode_rational, load_group
from ..config.settings import load_settings
from ..generators import make_rng
from ..lipschitz import delta_embed
from ..monoid import inverse_bruteforce_oracle, is_unit, pi_finite, unit_candidates
from ..report import ReportBuilder
from .base import BaseCommand, CommandResult

logger = logging.getLogger(__name__)


class UnitsCommand(BaseCommand):
    """Find the invertible elements of the Lipschitz monoid over a group.

    Each candidate is decided twice, by :func:`is_unit` and by brute-force
    search over the whole family, and the two answers must agree.
    """

    name = "units"
    help = "Search the units of the sup-convolution monoid"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('group', help='Group file')
        parser.add_argument('--candidates', type=int, default=None, help='Number of random candidate maps')
        parser.add_argument('--seed', type=int, default=None, help='Random seed')

    def execute(self, args: argparse.Namespace) -> CommandResult:
        g = load_group(args.group)
        n = args.candidates if args.candidates is not None else int(load_settings()['units']['candidates'])
        cert = pi_finite(g)
        family = unit_candidates(g, make_rng(args.seed), n)
        deltas = {delta_embed(g.space, x): x for x in g.points}

        report = ReportBuilder("agreement", "units_are_deltas")
        units = []
        for i, f in enumerate(family):
            analytic = is_unit(g, f)
            searched = inverse_bruteforce_oracle(g, f, family)
            if analytic != searched:
                report.fail("agreement", (i,))
            if searched is not None:
                if f not in deltas:
                    report.fail("units_are_deltas", (i,))
                units.append({'candidate': i, 'delta': deltas.get(f), 'inverse': encode_lipmap(searched)['values']})
        logger.debug(f"units: {len(units)} of {len(family)} candidates invertible")

        result = report.build()
        details = {
            'candidates': len(family),
            'pi': {'size': len(cert), 'separation': encode_rational(cert.separation)},
            'units': units,
            'report': result.to_dict(),
        }
        return CommandResult(result.passed, f"{len(units)} units among {len(family)} candidates", details)
