"""Seeded random generators for candidate families, benchmarks and sample maps.

Every function takes an explicit :class:`random.Random`; :func:`make_rng`
seeds one from ``--seed``, ``PMSKIT_SEED`` or the configured default.
"""

import random
from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .config.settings import load_settings
from .distributions import H0, DistFn, pointwise_sup
from .lipschitz import LipMap, delta_embed, shift_map
from .spaces import Pair, Point, ProbGroup, ProbSpace, menger_from_classical, relabel_group, simple_space
from .tnorms import TriangleFn


def make_rng(seed: Optional[int] = None) -> random.Random:
    if seed is None:
        seed = int(load_settings()['random']['seed'])
    return random.Random(seed)


def _limits(max_jumps: Optional[int], max_denominator: Optional[int]) -> Tuple[int, int]:
    config = load_settings()['random']
    return (int(config['max_jumps']) if max_jumps is None else max_jumps,
            int(config['max_denominator']) if max_denominator is None else max_denominator)


def random_distfn(rng: random.Random, max_jumps: Optional[int] = None,
                  max_denominator: Optional[int] = None, horizon: int = 4) -> DistFn:
    """A random element of Delta+ with at most ``max_jumps`` jumps.

    Breakpoints lie in [0, horizon]; levels in (0, 1] with denominators up
    to ``max_denominator``. Defective results (last level below 1) and H_inf
    are both possible.
    """
    max_jumps, max_denominator = _limits(max_jumps, max_denominator)
    k = rng.randint(0, max_jumps)
    if k == 0:
        return DistFn()
    den = rng.randint(1, max_denominator)
    times = set()
    while len(times) < k:
        times.add(Fraction(rng.randint(0, horizon * den), den))
    levels = set()
    level_den = max(rng.randint(1, max_denominator), k)
    while len(levels) < k:
        levels.add(Fraction(rng.randint(1, level_den), level_den))
    if rng.random() < 0.5:
        levels.discard(max(levels))
        levels.add(Fraction(1))
        while len(levels) < k:
            levels.add(Fraction(rng.randint(1, level_den), level_den))
    return DistFn(tuple(zip(sorted(times), sorted(levels))))


def random_distfn_with_jumps(rng: random.Random, n: int) -> DistFn:
    """A DistFn with exactly ``n`` jumps, for kernel benchmarks."""
    if n == 0:
        return DistFn()
    times = sorted(Fraction(t, 4) for t in rng.sample(range(16 * n), n))
    levels = sorted(Fraction(v, 8 * n) for v in rng.sample(range(1, 8 * n + 1), n))
    return DistFn(tuple(zip(times, levels)))


def random_classical_metric(rng: random.Random, points: Sequence[Point],
                            max_weight: int = 4, max_denominator: int = 4) -> Dict[Pair, Fraction]:
    """Shortest-path metric of a complete graph with random positive weights."""
    points = list(points)
    d: Dict[Pair, Fraction] = {}
    for i, p in enumerate(points):
        d[(p, p)] = Fraction(0)
        for q in points[i + 1:]:
            w = Fraction(rng.randint(1, max_weight * max_denominator), max_denominator)
            d[(p, q)] = d[(q, p)] = w
    for k in points:
        for p in points:
            for q in points:
                via = d[(p, k)] + d[(k, q)]
                if via < d[(p, q)]:
                    d[(p, q)] = via
    return d


def random_space(rng: random.Random, points: Sequence[Point], tf: TriangleFn) -> ProbSpace:
    """A Menger lift or a simple space over a random classical metric."""
    d = random_classical_metric(rng, points)
    if rng.random() < 0.5:
        return menger_from_classical(points, d, tf)
    G = random_distfn(rng)
    while G == H0:
        G = random_distfn(rng)
    return simple_space(points, d, G, tf)


def random_lipmap(rng: random.Random, space: ProbSpace, terms: Optional[int] = None) -> LipMap:
    """Pointwise sup of a few shifted delta maps, which is always 1-Lipschitz."""
    terms = terms or rng.randint(1, len(space.points))
    parts = []
    for _ in range(terms):
        a = rng.choice(space.points)
        parts.append(shift_map(delta_embed(space, a), random_distfn(rng)))
    return LipMap(space, {x: pointwise_sup([f.values[x] for f in parts]) for x in space.points})


def random_raw_map(rng: random.Random, space: ProbSpace) -> LipMap:
    """Independent random values at every point; usually not 1-Lipschitz."""
    return LipMap(space, {x: random_distfn(rng) for x in space.points})


def random_relabel(rng: random.Random, g: ProbGroup, prefix: str = "x") -> Tuple[ProbGroup, Mapping[Point, Point]]:
    """A relabelled copy of g and the bijection onto it, with shuffled labels."""
    labels = [f"{prefix}{i}" for i in range(len(g.points))]
    rng.shuffle(labels)
    forward = dict(zip(g.points, labels))
    return relabel_group(g, forward), forward
