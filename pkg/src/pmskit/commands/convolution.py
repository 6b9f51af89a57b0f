import argparse
import logging
import time
from fractions import Fraction

from ..codec import encode_distfn, encode_rational, load_distfn
from ..config.settings import load_settings
from ..distributions import WeakTolerance, sibley_distance
from ..generators import make_rng, random_distfn_with_jumps
from ..tnorms import KERNELS, TNorm, sup_conv
from ..utils.system import get_system_info
from .base import BaseCommand, CommandResult, sizes_arg, tnorm_arg, tolerance_arg, triangle_arg

logger = logging.getLogger(__name__)


class ConvCommand(BaseCommand):
    name = "conv"
    help = "Apply a triangle function to two distributions"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('--tf', type=triangle_arg, required=True, help='Triangle function, e.g. sup:product')
        parser.add_argument('F', help='First distribution (file or inline JSON)')
        parser.add_argument('L', help='Second distribution (file or inline JSON)')

    def execute(self, args: argparse.Namespace) -> CommandResult:
        F, L = load_distfn(args.F), load_distfn(args.L)
        result = args.tf(F, L)
        details = {'tf': args.tf.tag, 'result': encode_distfn(result)}
        return CommandResult(True, f"{args.tf.tag}: {len(result.jumps)} jumps", details)


class LevyCommand(BaseCommand):
    name = "levy"
    help = "Sibley (modified Levy) distance between two distributions"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('F', help='First distribution (file or inline JSON)')
        parser.add_argument('L', help='Second distribution (file or inline JSON)')
        parser.add_argument('--tol', type=tolerance_arg, default=None, help='Bisection tolerance p/q in (0, 1]')

    def execute(self, args: argparse.Namespace) -> CommandResult:
        F, L = load_distfn(args.F), load_distfn(args.L)
        tol = args.tol or WeakTolerance.default()
        distance = sibley_distance(F, L, tol)
        details = {'distance': encode_rational(distance), 'tolerance': encode_rational(tol.eps)}
        return CommandResult(True, f"distance {distance} (within {tol.eps})", details)


class BenchCommand(BaseCommand):
    """Time the naive and frontier sup-convolution kernels against each other.

    Outputs are compared for equality before any timing; a mismatch or a
    frontier time above ``max_slowdown`` times the naive one fails.
    """

    name = "bench"
    help = "Benchmark the sup-convolution kernels"

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('--sizes', type=sizes_arg, default=None, help='Comma-separated jump counts')
        parser.add_argument('--tnorm', type=tnorm_arg, default=TNorm.PRODUCT, help='min | product | lukasiewicz')
        parser.add_argument('--repeats', type=int, default=None, help='Timed runs per kernel')
        parser.add_argument('--seed', type=int, default=None, help='Random seed')

    def execute(self, args: argparse.Namespace) -> CommandResult:
        config = load_settings()['bench']
        sizes = args.sizes or [int(n) for n in config['sizes']]
        repeats = args.repeats or int(config['repeats'])
        max_slowdown = Fraction(str(config['max_slowdown']))
        rng = make_rng(args.seed)

        rows = []
        failures = []
        for n in sizes:
            F, L = random_distfn_with_jumps(rng, n), random_distfn_with_jumps(rng, n)
            outputs = {kernel: sup_conv(args.tnorm, F, L, kernel) for kernel in KERNELS}
            if outputs['naive'] != outputs['frontier']:
                failures.append(f"kernels disagree at size {n}")
                rows.append({'size': n, 'equal': False})
                continue

            timings = {}
            for kernel in KERNELS:
                start = time.perf_counter()
                for _ in range(repeats):
                    sup_conv(args.tnorm, F, L, kernel)
                timings[kernel] = (time.perf_counter() - start) / repeats
            ratio = timings['frontier'] / timings['naive'] if timings['naive'] > 0 else 0.0
            if ratio > max_slowdown:
                failures.append(f"frontier is {ratio:.2f}x naive at size {n}")
            logger.debug(f"bench size {n}: naive {timings['naive']:.4f}s frontier {timings['frontier']:.4f}s")
            rows.append({
                'size': n,
                'equal': True,
                'output_jumps': len(outputs['frontier'].jumps),
                'naive_seconds': round(timings['naive'], 6),
                'frontier_seconds': round(timings['frontier'], 6),
                'ratio': round(ratio, 4),
            })

        details = {
            'tnorm': args.tnorm.value,
            'max_slowdown': str(max_slowdown),
            'system': get_system_info(),
            'results': rows,
            'failures': failures,
        }
        if failures:
            return CommandResult(False, "; ".join(failures), details)
        return CommandResult(True, f"frontier kernel within {max_slowdown}x of naive on sizes {sizes}", details)
