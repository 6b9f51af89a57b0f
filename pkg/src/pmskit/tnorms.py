"""t-norms, t-conorms and the triangle functions they induce on Delta+.

``sup_conv`` is the sup-convolution ``(F *_T L)(t) = sup_{s+u=t} T(F(s), L(u))``.
On step functions its value at t is the largest ``T(v_i, w_j)`` over jump
pairs with ``s_i + u_j < t``, which both kernels below compute exactly.
``inf_conv_dual`` is the inf-convolution under the dual t-conorm.
"""

import heapq
import logging
from bisect import bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .distributions import H0, DistFn, rebuild, to_rational

logger = logging.getLogger(__name__)

SUP = "sup"
INFDUAL = "infdual"


class TNorm(Enum):
    """The three continuous t-norms supported, tagged as in files."""
    MINIMUM = "min"
    PRODUCT = "product"
    LUKASIEWICZ = "lukasiewicz"

    def apply(self, x: Fraction, y: Fraction) -> Fraction:
        """T(x, y) without range checks; the kernels' inner loop."""
        if self is TNorm.MINIMUM:
            return x if x <= y else y
        if self is TNorm.PRODUCT:
            return x * y
        s = x + y - 1
        return s if s > 0 else Fraction(0)

    def dual(self, x: Fraction, y: Fraction) -> Fraction:
        """T*(x, y) = 1 - T(1-x, 1-y)."""
        return 1 - self.apply(1 - x, 1 - y)

    @classmethod
    def parse(cls, tag: str) -> 'TNorm':
        try:
            return cls(tag.strip().lower())
        except ValueError:
            known = ", ".join(t.value for t in cls)
            raise ValueError(f"Unknown t-norm {tag!r}; expected one of: {known}") from None


def _level(x) -> Fraction:
    x = to_rational(x)
    if not 0 <= x <= 1:
        raise ValueError(f"t-norm arguments must lie in [0, 1], got {x}")
    return x


def tnorm_apply(T: TNorm, x, y) -> Fraction:
    """Evaluate T at two levels of [0, 1].

    Raises:
        ValueError: If a level is outside [0, 1]
    """
    return T.apply(_level(x), _level(y))


def tconorm_apply(T: TNorm, x, y) -> Fraction:
    """Evaluate the dual t-conorm T* at two levels of [0, 1].

    Raises:
        ValueError: If a level is outside [0, 1]
    """
    return T.dual(_level(x), _level(y))


def _sup_conv_naive(T: TNorm, F: DistFn, L: DistFn) -> DistFn:
    best: Dict[Fraction, Fraction] = {}
    for s, v in F.jumps:
        for u, w in L.jumps:
            value = T.apply(v, w)
            key = s + u
            if value > best.get(key, 0):
                best[key] = value
    jumps = []
    running = Fraction(0)
    for key in sorted(best):
        if best[key] > running:
            running = best[key]
            jumps.append((key, running))
    return DistFn.of(jumps)


def _sup_conv_frontier(T: TNorm, F: DistFn, L: DistFn) -> DistFn:
    """Sweep pairs in order of breakpoint sum, visiting only frontier candidates.

    Each row i of F keeps a pointer into L. A row only ever points at the
    first j whose T-value beats the running maximum; everything it skips is
    dominated by a pair with a smaller sum and a value at least as large.
    """
    times, levels = L.times, L.levels
    n = len(levels)
    if not F.jumps or not n:
        return DistFn()
    apply = T.apply
    running = Fraction(0)

    def seek(v: Fraction, start: int) -> int:
        return bisect_right(levels, running, lo=start, key=lambda w: apply(v, w))

    heap: List[Tuple[Fraction, int, int]] = []
    for i, (s, v) in enumerate(F.jumps):
        j = seek(v, 0)
        if j < n:
            heap.append((s + times[j], i, j))
    heapq.heapify(heap)

    jumps = []
    pops = 0
    while heap and running < 1:
        key, i, j = heapq.heappop(heap)
        pops += 1
        s, v = F.jumps[i]
        value = apply(v, levels[j])
        if value > running:
            running = value
            jumps.append((key, running))
        j = seek(v, j + 1)
        if j < n:
            heapq.heappush(heap, (s + times[j], i, j))
    logger.debug(f"frontier kernel: {pops} pops for {len(F.jumps)}x{n} pairs")
    return DistFn.of(jumps)


KERNELS: Dict[str, Callable[[TNorm, DistFn, DistFn], DistFn]] = {
    'naive': _sup_conv_naive,
    'frontier': _sup_conv_frontier,
}


def sup_conv(T: TNorm, F: DistFn, L: DistFn, kernel: str = 'frontier') -> DistFn:
    """The sup-convolution F *_T L.

    Args:
        T: t-norm
        F: Left operand
        L: Right operand
        kernel: 'frontier' (default) or 'naive'; both return the same value
    """
    try:
        impl = KERNELS[kernel]
    except KeyError:
        raise ValueError(f"Unknown kernel {kernel!r}; expected one of: {', '.join(KERNELS)}") from None
    return impl(T, F, L)


def sup_conv_grid_oracle(T: TNorm, F: DistFn, L: DistFn) -> DistFn:
    """Independent evaluation of F *_T L by sampling.

    With eps a quarter of the smallest gap between breakpoint sums, the
    value just after each sum sigma is sampled at sigma + eps by trying
    s = t_i + eps/2 for every breakpoint t_i of F. No two breakpoints of
    either operand are closer than 4*eps, so each sample reads exactly the
    levels the splitting s + u = t sees.
    """
    sums = sorted({s + u for s in F.times for u in L.times})
    if not sums:
        return DistFn()
    gaps = [b - a for a, b in zip(sums, sums[1:])]
    eps = (min(gaps) if gaps else Fraction(1)) / 4
    splits = [s + eps / 2 for s in F.times]

    samples = []
    for sigma in sums:
        t = sigma + eps
        samples.append((sigma, max(T.apply(F(s), L(t - s)) for s in splits)))
    return DistFn.of(samples)


def inf_conv_dual(T: TNorm, F: DistFn, L: DistFn) -> DistFn:
    """The inf-convolution ``inf_{s+u=t} T*(F(s), L(u))``.

    Split s over the intervals of F: on the interval with level l ending
    at r, u = t - s runs over [t - r, ...) and the infimum of L there is
    L(t - r), or 0 when the interval is unbounded. Every interval sum is
    left-open and right-closed, so the result is already left-continuous.
    """
    ends = list(F.times[1:]) + [None]
    pieces = [(Fraction(0), F.times[0] if F.times else None)]
    pieces += [(v, r) for v, r in zip(F.levels, ends)]

    def level_at(t: Fraction) -> Fraction:
        return min(T.dual(v, L(t - r) if r is not None else Fraction(0)) for v, r in pieces)

    breaks = {s + u for s in F.times for u in L.times}
    return rebuild(breaks, level_at)


@dataclass(frozen=True)
class TriangleFn:
    """A triangle function induced by a t-norm.

    ``kind`` is ``"sup"`` for the sup-convolution or ``"infdual"`` for the
    inf-convolution under the dual t-conorm.
    """
    kind: str
    tnorm: TNorm

    def __post_init__(self) -> None:
        if self.kind not in (SUP, INFDUAL):
            raise ValueError(f"Unknown triangle function kind {self.kind!r}")

    @property
    def sup_continuous(self) -> bool:
        return self.kind == SUP

    @property
    def tag(self) -> str:
        return f"{self.kind}:{self.tnorm.value}"

    @classmethod
    def parse(cls, tag: str) -> 'TriangleFn':
        """Parse ``"sup:<tnorm>"`` or ``"infdual:<tnorm>"``.

        Raises:
            ValueError: For malformed tags
        """
        kind, sep, name = tag.strip().partition(':')
        if not sep:
            raise ValueError(f"Triangle function tag must look like 'sup:min', got {tag!r}")
        return cls(kind.lower(), TNorm.parse(name))

    def __call__(self, F: DistFn, L: DistFn) -> DistFn:
        if self.kind == SUP:
            return sup_conv(self.tnorm, F, L)
        return inf_conv_dual(self.tnorm, F, L)

    def __str__(self) -> str:
        return self.tag


def sup_triangle(T: TNorm) -> TriangleFn:
    return TriangleFn(SUP, T)


def infdual_triangle(T: TNorm) -> TriangleFn:
    return TriangleFn(INFDUAL, T)


def is_invertible_in_delta(tf: TriangleFn, F: DistFn) -> bool:
    """H_0 is the only unit of (Delta+, tf) for both supported kinds."""
    return F == H0


def delta_grid(breakpoints: Sequence, levels: Sequence, max_jumps: int) -> Iterator[DistFn]:
    """Enumerate every DistFn with at most ``max_jumps`` jumps on a finite grid.

    Jump times come from ``breakpoints`` and jump levels from ``levels``
    (zero levels are ignored); H_inf is the first element.
    """
    times = sorted({to_rational(b) for b in breakpoints})
    values = sorted({to_rational(v) for v in levels} - {Fraction(0)})
    for k in range(max_jumps + 1):
        for ts in combinations(times, k):
            for vs in combinations(values, k):
                yield DistFn(tuple(zip(ts, vs)))


def convolve_many(tf: TriangleFn, pairs: Sequence[Tuple[DistFn, DistFn]],
                  max_workers: Optional[int] = None) -> List[DistFn]:
    """Apply ``tf`` to every pair, results in input order.

    With ``max_workers`` above 1 the pairs are spread over a thread pool;
    the values are pure so the output is identical either way.
    """
    if not max_workers or max_workers <= 1 or len(pairs) < 2:
        return [tf(F, L) for F, L in pairs]
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        return list(executor.map(lambda pair: tf(*pair), pairs))
