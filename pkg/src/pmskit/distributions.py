"""Distribution functions of Delta+ as exact left-continuous step functions.

A :class:`DistFn` stores its jumps ``(t_i, v_i)``: the function is 0 on
``(-inf, t_1]``, ``v_i`` on ``(t_i, t_{i+1}]`` and ``v_k`` after the last
jump. ``F(+inf) = 1`` is implied and never stored, so a function whose last
level is below 1 (a defective distribution) is an ordinary value here.
"""

import logging
import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

logger = logging.getLogger(__name__)

INFINITY = math.inf

RationalLike = Union[Fraction, int, str]
Time = Union[Fraction, int, float]


def to_rational(value: RationalLike) -> Fraction:
    """Convert an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: every value in this package is exact.

    Raises:
        TypeError: For floats, bools and other types
        ValueError: For strings that are not rationals
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"Expected an exact rational, got {type(value).__name__} {value!r}")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"Expected an exact rational, got {type(value).__name__}")


def _canonical(pairs: Iterable[Tuple[RationalLike, RationalLike]]) -> Tuple[Tuple[Fraction, Fraction], ...]:
    """Sort, drop zero levels and repeated levels.

    Equal breakpoints keep their largest level. A level that drops below
    an earlier one is an error: distribution functions are nondecreasing.
    """
    converted = sorted(((to_rational(t), to_rational(v)) for t, v in pairs), key=lambda p: p[0])
    merged: List[Tuple[Fraction, Fraction]] = []
    for t, v in converted:
        if v < 0 or v > 1:
            raise ValueError(f"Level {v} at t={t} is outside [0, 1]")
        if merged and merged[-1][0] == t:
            if v > merged[-1][1]:
                merged[-1] = (t, v)
            continue
        merged.append((t, v))

    jumps: List[Tuple[Fraction, Fraction]] = []
    level = Fraction(0)
    for t, v in merged:
        if v < level:
            raise ValueError(f"Level {v} at t={t} is below the earlier level {level}")
        if v == level:
            continue
        if t < 0:
            raise ValueError(f"Positive level {v} at negative time {t}: Delta+ requires F(0)=0")
        jumps.append((t, v))
        level = v
    return tuple(jumps)


@dataclass(frozen=True)
class DistFn:
    """An element of Delta+ in canonical jump-list form.

    Use :meth:`of` to build from arbitrary breakpoints; the plain
    constructor only accepts lists that are already canonical.
    """
    jumps: Tuple[Tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self) -> None:
        jumps = tuple((to_rational(t), to_rational(v)) for t, v in self.jumps)
        previous_t: Optional[Fraction] = None
        previous_v = Fraction(0)
        for t, v in jumps:
            if t < 0:
                raise ValueError(f"Breakpoint {t} is negative")
            if previous_t is not None and t <= previous_t:
                raise ValueError(f"Breakpoints must strictly increase: {previous_t} then {t}")
            if not previous_v < v <= 1:
                raise ValueError(f"Levels must strictly increase inside (0, 1]: {previous_v} then {v}")
            previous_t, previous_v = t, v
        object.__setattr__(self, 'jumps', jumps)
        object.__setattr__(self, '_times', tuple(t for t, _ in jumps))
        object.__setattr__(self, '_levels', tuple(v for _, v in jumps))

    @classmethod
    def of(cls, pairs: Iterable[Tuple[RationalLike, RationalLike]]) -> 'DistFn':
        """Build a canonical DistFn from (time, level) pairs in any order."""
        return cls(_canonical(pairs))

    @property
    def times(self) -> Tuple[Fraction, ...]:
        return self._times

    @property
    def levels(self) -> Tuple[Fraction, ...]:
        return self._levels

    @property
    def final_level(self) -> Fraction:
        """Level after the last jump; below 1 for defective distributions."""
        return self._levels[-1] if self._levels else Fraction(0)

    @property
    def is_defective(self) -> bool:
        return self.final_level < 1

    def __call__(self, t: Time) -> Fraction:
        """Evaluate at t; at a breakpoint the level to its left is returned."""
        if t == INFINITY:
            return Fraction(1)
        if t == -INFINITY:
            return Fraction(0)
        k = bisect_left(self._times, t)
        return self._levels[k - 1] if k else Fraction(0)

    def scaled(self, k: RationalLike) -> 'DistFn':
        """Return t -> F(t/k); k = 0 gives H_0.

        Raises:
            ValueError: If k is negative
        """
        k = to_rational(k)
        if k < 0:
            raise ValueError(f"Scale factor must be nonnegative, got {k}")
        if k == 0:
            return H0
        return DistFn(tuple((t * k, v) for t, v in self.jumps))

    def __repr__(self) -> str:
        if not self.jumps:
            return "DistFn(H_inf)"
        if len(self.jumps) == 1 and self.jumps[0][1] == 1:
            return f"DistFn(H_{self.jumps[0][0]})"
        inner = ", ".join(f"({t}, {v})" for t, v in self.jumps)
        return f"DistFn([{inner}])"


def heaviside(a: Time) -> DistFn:
    """Return H_a, the distribution jumping from 0 to 1 just after a.

    ``heaviside(INFINITY)`` is H_inf, identically 0 on the reals.

    Raises:
        ValueError: If a is negative
    """
    if a == INFINITY:
        return DistFn(())
    a = to_rational(a)
    if a < 0:
        raise ValueError(f"H_a needs a >= 0 to lie in Delta+, got a={a}")
    return DistFn(((a, Fraction(1)),))


H0 = DistFn(((Fraction(0), Fraction(1)),))
HINF = DistFn(())


def evaluate(F: DistFn, t: Time) -> Fraction:
    return F(t)


def _sample_points(functions: Sequence[DistFn]) -> List[Fraction]:
    """One point inside every interval of the merged breakpoint partition.

    By left-continuity the value at a breakpoint is the value on the
    interval ending there, so the breakpoints themselves plus one point
    after the last one cover every interval.
    """
    breaks = sorted({t for F in functions for t in F.times})
    if not breaks:
        return [Fraction(0)]
    return breaks + [breaks[-1] + 1]


def rebuild(breaks: Iterable[Fraction], level_at: Callable[[Fraction], Fraction]) -> DistFn:
    """Build the step function jumping only at ``breaks``.

    ``level_at(r)`` must return the value on the partition interval whose
    right end is r (for the unbounded last interval, at last break + 1).
    """
    points = sorted(set(breaks))
    jumps = []
    for k, b in enumerate(points):
        r = points[k + 1] if k + 1 < len(points) else b + 1
        jumps.append((b, level_at(r)))
    return DistFn.of(jumps)


def leq(F: DistFn, G: DistFn) -> bool:
    """Decide F(t) <= G(t) for all t."""
    return all(F(r) <= G(r) for r in _sample_points((F, G)))


def pointwise_sup(family: Sequence[DistFn]) -> DistFn:
    """Least upper bound of a finite family in the lattice order.

    Raises:
        ValueError: If the family is empty
    """
    family = list(family)
    if not family:
        raise ValueError("pointwise_sup needs a nonempty family")
    if len(family) == 1:
        return family[0]
    breaks = {t for F in family for t in F.times}
    return rebuild(breaks, lambda r: max(F(r) for F in family))


@dataclass(frozen=True)
class WeakTolerance:
    """Stopping width for the Sibley-distance bisection, in (0, 1]."""
    eps: Fraction

    def __post_init__(self) -> None:
        eps = to_rational(self.eps)
        if not 0 < eps <= 1:
            raise ValueError(f"Tolerance must lie in (0, 1], got {eps}")
        object.__setattr__(self, 'eps', eps)

    @classmethod
    def default(cls) -> 'WeakTolerance':
        from .config.settings import load_settings
        return cls(to_rational(str(load_settings()['sibley']['tolerance'])))

    def finer(self, divisor: int) -> 'WeakTolerance':
        return WeakTolerance(self.eps / divisor)


def _within(F: DistFn, G: DistFn, h: Fraction) -> bool:
    """G(t) <= F(t+h)+h and F(t) <= G(t+h)+h for every t in (0, 1/h).

    Both sides are left-continuous step functions of t, so checking the
    midpoint of every interval between consecutive breakpoints is exact.
    """
    upper = 1 / h
    cuts = {Fraction(0), upper}
    for t in F.times + G.times:
        cuts.add(t)
        cuts.add(t - h)
    points = sorted(c for c in cuts if 0 <= c <= upper)
    for a, b in zip(points, points[1:]):
        m = (a + b) / 2
        if G(m) > F(m + h) + h or F(m) > G(m + h) + h:
            return False
    return True


def sibley_distance(F: DistFn, G: DistFn, tol: Optional[WeakTolerance] = None) -> Fraction:
    """Modified Levy distance, to within ``tol`` from above.

    The admissibility condition is monotone in h and always holds at
    h = 1, so bisection on [0, 1] keeps an admissible upper end. Equal
    arguments return exactly 0.
    """
    if F == G:
        return Fraction(0)
    tol = tol or WeakTolerance.default()
    lo, hi = Fraction(0), Fraction(1)
    steps = 0
    while hi - lo > tol.eps:
        mid = (lo + hi) / 2
        if _within(F, G, mid):
            hi = mid
        else:
            lo = mid
        steps += 1
    logger.debug(f"sibley_distance: {steps} bisection steps, bracket [{lo}, {hi}]")
    return hi


def weak_limit(seq: Sequence[DistFn], tol: Optional[WeakTolerance] = None) -> Optional[DistFn]:
    """Return the last element when the tail of ``seq`` is Cauchy at ``tol``.

    The tail is the last ceil(n/2) entries; every pair in it must satisfy
    the admissibility condition of the Sibley distance at h = tol exactly,
    which by monotonicity in h is d_S <= tol whenever the infimum is
    attained. Returns None when there is no limit.

    Raises:
        ValueError: If seq is empty
    """
    seq = list(seq)
    if not seq:
        raise ValueError("weak_limit needs a nonempty sequence")
    tol = tol or WeakTolerance.default()

    tail = seq[len(seq) // 2:]
    for i, F in enumerate(tail):
        for G in tail[i + 1:]:
            if F != G and not _within(F, G, tol.eps):
                logger.debug(f"weak_limit: tail pair farther apart than {tol.eps}")
                return None
    return seq[-1]
