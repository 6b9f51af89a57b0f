"""Probabilistic 1-Lipschitz maps over a finite ProbSpace.

A map f: points -> Delta+ is 1-Lipschitz when D(x,y) * f(y) <= f(x) for
every ordered pair (x, y), with * the space's triangle function.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Any, Dict, Iterable, Mapping, Sequence, Union

from .distributions import DistFn, heaviside, leq, pointwise_sup, to_rational
from .errors import LipschitzError, PreconditionError
from .report import Report, ReportBuilder
from .spaces import Pair, Point, ProbSpace, check_heaviside_sum, menger_from_classical
from .tnorms import TriangleFn

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LipMap:
    """A total map from a space's carrier to Delta+.

    Construction checks totality only; use :func:`is_one_lipschitz` to
    check the Lipschitz condition. Two maps are equal when their spaces
    and their value tables are; the hash looks at the values alone.
    """
    space: ProbSpace
    values: Mapping[Point, DistFn]

    def __post_init__(self) -> None:
        missing = [p for p in self.space.points if p not in self.values]
        if missing:
            raise ValueError(f"Map is not total; no value at {missing[0]!r}")
        extra = set(self.values) - set(self.space.points)
        if extra:
            raise ValueError(f"Map has values outside the carrier: {sorted(map(str, extra))}")
        values = {p: self.values[p] for p in self.space.points}
        object.__setattr__(self, 'values', MappingProxyType(values))

    def __call__(self, x: Point) -> DistFn:
        try:
            return self.values[x]
        except KeyError:
            raise PreconditionError(f"{x!r} is not a point of the carrier") from None

    def restrict(self, subset: Iterable[Point]) -> Dict[Point, DistFn]:
        return {p: self.values[p] for p in subset}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LipMap):
            return NotImplemented
        if self.space is not other.space and self.space != other.space:
            return False
        return dict(self.values) == dict(other.values)

    def __hash__(self) -> int:
        return hash(frozenset(self.values.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{p}: {F!r}" for p, F in self.values.items())
        return f"LipMap({{{inner}}})"


MapLike = Union[LipMap, Mapping[Point, DistFn]]


def _values(f: MapLike) -> Mapping[Point, DistFn]:
    return f.values if isinstance(f, LipMap) else f


def _require_sup_continuous(tf: TriangleFn, operation: str) -> None:
    if not tf.sup_continuous:
        raise PreconditionError(f"{operation} needs a sup-continuous triangle function, got {tf.tag}")


def is_one_lipschitz(s: ProbSpace, f: MapLike) -> Report:
    """Check totality and D(x,y) * f(y) <= f(x) over all ordered pairs."""
    values = _values(f)
    report = ReportBuilder("totality", "lipschitz")
    missing = [p for p in s.points if p not in values]
    for p in missing:
        report.fail("totality", (p,))
    if missing:
        return report.build()

    for x in s.points:
        for y in s.points:
            if x == y:
                continue
            lhs = s.tf(s.metric[(x, y)], values[y])
            if not leq(lhs, values[x]):
                report.fail("lipschitz", (x, y), lhs, values[x])
    return report.build()


def delta_embed(s: ProbSpace, a: Point) -> LipMap:
    """delta_a: y -> D(y, a)."""
    if a not in s:
        raise PreconditionError(f"{a!r} is not a point of the carrier")
    return LipMap(s, {y: s.metric[(y, a)] for y in s.points})


def shift_map(f: LipMap, F: DistFn) -> LipMap:
    """<f, F>: x -> f(x) * F."""
    tf = f.space.tf
    return LipMap(f.space, {x: tf(v, F) for x, v in f.values.items()})


def dist_to_set(s: ProbSpace, A: Iterable[Point]) -> LipMap:
    """D(., A): x -> sup over y in A of D(x, y).

    Raises:
        PreconditionError: If A is empty, leaves the carrier, or the
            triangle function is not sup-continuous
    """
    _require_sup_continuous(s.tf, "dist_to_set")
    A = list(dict.fromkeys(A))
    if not A:
        raise PreconditionError("dist_to_set needs a nonempty set")
    unknown = [a for a in A if a not in s]
    if unknown:
        raise PreconditionError(f"{unknown[0]!r} is not a point of the carrier")
    return LipMap(s, {x: pointwise_sup([s.metric[(x, y)] for y in A]) for x in s.points})


def mcshane_extend(s: ProbSpace, A: Iterable[Point], f_A: Mapping[Point, DistFn]) -> LipMap:
    """Extend a 1-Lipschitz map on A to the whole carrier.

    The extension is x -> sup over a in A of D(a, x) * f_A(a), which agrees
    with f_A on A and is 1-Lipschitz on s.

    Raises:
        PreconditionError: For an empty A, a domain mismatch, or a triangle
            function that is not sup-continuous
        LipschitzError: If f_A is not 1-Lipschitz on the subspace A
    """
    _require_sup_continuous(s.tf, "mcshane_extend")
    A = list(dict.fromkeys(A))
    if not A:
        raise PreconditionError("mcshane_extend needs a nonempty domain")
    if set(f_A) != set(A):
        raise PreconditionError(f"Partial map is defined on {sorted(map(str, f_A))}, expected {sorted(map(str, A))}")

    report = is_one_lipschitz(s.restrict(A), f_A)
    if not report.passed:
        v = report.first()
        logger.warning(f"Refusing to extend: partial map fails {v.axiom} at {v.witness}")
        raise LipschitzError(f"Partial map is not 1-Lipschitz on its domain (witness {v.witness})", report)

    tf = s.tf
    return LipMap(s, {x: pointwise_sup([tf(s.metric[(a, x)], f_A[a]) for a in A]) for x in s.points})


@dataclass(frozen=True)
class LiftVerdict:
    """Outcome of lifting a classical map x -> L(x) to x -> H_{L(x)}."""
    lipmap: LipMap
    classical: Report
    probabilistic: Report

    @property
    def agree(self) -> bool:
        return self.classical.passed == self.probabilistic.passed


def classical_lipschitz(points: Sequence[Point], d: Mapping[Pair, Fraction],
                        L: Mapping[Point, Fraction]) -> Report:
    """Check L(x) - L(y) <= d(x, y) over all ordered pairs."""
    report = ReportBuilder("lipschitz")
    for x in points:
        for y in points:
            if x != y and L[x] - L[y] > d[(x, y)]:
                report.fail("lipschitz", (x, y))
    return report.build()


def lift_classical(points: Sequence[Point], d: Mapping[Pair, Any],
                   L: Mapping[Point, Any], tf: TriangleFn) -> LiftVerdict:
    """Lift L to f(x) = H_{L(x)} over the Menger lift of d.

    f is 1-Lipschitz exactly when L is classically 1-Lipschitz; both checks
    are run and returned so the two verdicts can be compared pair by pair.

    Raises:
        MetricError: If d is not a metric or tf fails the Heaviside-sum law
        PreconditionError: If L is partial or takes a negative value
    """
    space = menger_from_classical(points, d, tf)
    levels = {}
    for x in space.points:
        if x not in L:
            raise PreconditionError(f"L has no value at {x!r}")
        levels[x] = to_rational(L[x])
        if levels[x] < 0:
            raise PreconditionError(f"L({x!r}) = {levels[x]} is negative")

    distances = {pair: F.times[0] for pair, F in space.metric.items()}
    check_heaviside_sum(tf, set(distances.values()) | set(levels.values()))

    lipmap = LipMap(space, {x: heaviside(levels[x]) for x in space.points})
    verdict = LiftVerdict(lipmap,
                          classical_lipschitz(space.points, distances, levels),
                          is_one_lipschitz(space, lipmap))
    if not verdict.agree:
        logger.warning(f"Classical and probabilistic Lipschitz checks disagree for {tf.tag}")
    return verdict
