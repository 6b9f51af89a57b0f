"""Finite probabilistic metric spaces and invariant probabilistic metric groups.

Points are opaque hashable labels (strings when read from files). A metric
is a table ``(p, q) -> DistFn`` that must be total on ``points x points``.
"""

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import (Any, Callable, Dict, Hashable, Iterable, Mapping,
                    Optional, Sequence, Tuple, Union)

from .distributions import H0, HINF, DistFn, heaviside, leq, to_rational
from .errors import MetricError, PreconditionError
from .report import Report, ReportBuilder
from .tnorms import TNorm, TriangleFn, sup_triangle

logger = logging.getLogger(__name__)

Point = Hashable
Pair = Tuple[Point, Point]
MetricTable = Mapping[Pair, DistFn]
ClassicalMetric = Mapping[Pair, Fraction]


def symmetric_table(points: Sequence[Point], entries: Mapping[Pair, Any],
                    diagonal: Any) -> Dict[Pair, Any]:
    """Fill in a pairwise table from partial entries.

    A pair given in one order only is mirrored; a missing diagonal entry
    is ``diagonal``. Pairs given in both orders are kept as given.

    Raises:
        PreconditionError: If an entry names an unknown point or an
            off-diagonal pair is missing in both orders
    """
    known = set(points)
    for p, q in entries:
        if p not in known or q not in known:
            raise PreconditionError(f"Table entry ({p!r}, {q!r}) names a point outside the carrier")
    table: Dict[Pair, Any] = {}
    for p in points:
        for q in points:
            if (p, q) in entries:
                table[(p, q)] = entries[(p, q)]
            elif (q, p) in entries:
                table[(p, q)] = entries[(q, p)]
            elif p == q:
                table[(p, q)] = diagonal
            else:
                raise PreconditionError(f"Missing table entry for ({p!r}, {q!r})")
    return table


@dataclass(frozen=True, eq=False)
class ProbSpace:
    """A finite probabilistic metric space (points, D, tf)."""
    points: Tuple[Point, ...]
    metric: MetricTable
    tf: TriangleFn

    def __post_init__(self) -> None:
        points = tuple(self.points)
        if len(set(points)) != len(points):
            raise ValueError(f"Duplicate points in carrier: {points!r}")
        missing = [(p, q) for p in points for q in points if (p, q) not in self.metric]
        if missing:
            raise ValueError(f"Metric table is not total; missing {missing[0]!r}")
        metric = {(p, q): self.metric[(p, q)] for p in points for q in points}
        object.__setattr__(self, 'points', points)
        object.__setattr__(self, 'metric', MappingProxyType(metric))

    def distance(self, p: Point, q: Point) -> DistFn:
        try:
            return self.metric[(p, q)]
        except KeyError:
            raise PreconditionError(f"Unknown point in ({p!r}, {q!r})") from None

    def __contains__(self, p: Point) -> bool:
        return (p, p) in self.metric

    def __len__(self) -> int:
        return len(self.points)

    def restrict(self, subset: Iterable[Point]) -> 'ProbSpace':
        """The subspace on ``subset``, keeping carrier order."""
        wanted = set(subset)
        unknown = wanted - set(self.points)
        if unknown:
            raise PreconditionError(f"Points not in the carrier: {sorted(map(str, unknown))}")
        points = tuple(p for p in self.points if p in wanted)
        return ProbSpace(points, {(p, q): self.metric[(p, q)] for p in points for q in points}, self.tf)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProbSpace):
            return NotImplemented
        return self.points == other.points and self.tf == other.tf and dict(self.metric) == dict(other.metric)

    def __hash__(self) -> int:
        return hash((self.points, self.tf))

    def __repr__(self) -> str:
        return f"ProbSpace({len(self.points)} points, tf={self.tf.tag})"


@dataclass(frozen=True, eq=False)
class ProbGroup:
    """A probabilistic metric group: a space plus a group law on its carrier.

    ``inverse`` may be partial when the table is not a group; the missing
    entries show up as violations in :func:`validate_invariant_group`.
    """
    space: ProbSpace
    op_table: Mapping[Pair, Point]
    identity: Point
    inverse: Mapping[Point, Point]

    def __post_init__(self) -> None:
        object.__setattr__(self, 'op_table', MappingProxyType(dict(self.op_table)))
        object.__setattr__(self, 'inverse', MappingProxyType(dict(self.inverse)))
        if self.identity not in self.space:
            raise ValueError(f"Identity {self.identity!r} is not a point of the carrier")

    @classmethod
    def from_table(cls, space: ProbSpace, op_table: Mapping[Pair, Point],
                   identity: Optional[Point] = None) -> 'ProbGroup':
        """Build a group from its operation table, finding the identity and inverses.

        Raises:
            PreconditionError: If no identity is given and none exists
        """
        points = space.points
        if identity is None:
            for e in points:
                if all(op_table.get((e, x)) == x and op_table.get((x, e)) == x for x in points):
                    identity = e
                    break
            else:
                raise PreconditionError("Operation table has no two-sided identity")
        inverse = {}
        for x in points:
            for y in points:
                if op_table.get((x, y)) == identity and op_table.get((y, x)) == identity:
                    inverse[x] = y
                    break
        return cls(space, op_table, identity, inverse)

    @property
    def points(self) -> Tuple[Point, ...]:
        return self.space.points

    @property
    def tf(self) -> TriangleFn:
        return self.space.tf

    def mul(self, p: Point, q: Point) -> Point:
        try:
            return self.op_table[(p, q)]
        except KeyError:
            raise PreconditionError(f"Operation table has no entry for ({p!r}, {q!r})") from None

    def inv(self, p: Point) -> Point:
        try:
            return self.inverse[p]
        except KeyError:
            raise PreconditionError(f"{p!r} has no inverse") from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProbGroup):
            return NotImplemented
        return (self.space == other.space and dict(self.op_table) == dict(other.op_table)
                and self.identity == other.identity)

    def __hash__(self) -> int:
        return hash((self.space, self.identity))

    def __repr__(self) -> str:
        return f"ProbGroup({len(self.points)} elements, identity={self.identity!r}, tf={self.tf.tag})"


def validate_space(s: ProbSpace) -> Report:
    """Check D(p,q) = H_0 iff p = q, symmetry, and D(p,q) * D(q,r) <= D(p,r).

    Every ordered triple is checked; violations carry the triple and both
    sides of the failed comparison.
    """
    report = ReportBuilder("identity", "symmetry", "triangle")
    points, D = s.points, s.metric

    for i, p in enumerate(points):
        for q in points:
            same = p == q
            if same and D[(p, q)] != H0:
                report.fail("identity", (p,), D[(p, q)], H0)
            elif not same and D[(p, q)] == H0:
                report.fail("identity", (p, q), D[(p, q)], H0)
        for q in points[i + 1:]:
            if D[(p, q)] != D[(q, p)]:
                report.fail("symmetry", (p, q), D[(p, q)], D[(q, p)])

    for p in points:
        for q in points:
            for r in points:
                lhs = s.tf(D[(p, q)], D[(q, r)])
                if not leq(lhs, D[(p, r)]):
                    report.fail("triangle", (p, q, r), lhs, D[(p, r)])

    result = report.build()
    if not result.passed:
        logger.debug(f"validate_space: {len(result.violations)} violations on {s!r}")
    return result


def validate_invariant_group(g: ProbGroup) -> Report:
    """Check the group law by enumeration and two-sided invariance of D.

    Space axioms are checked separately by :func:`validate_space`.
    """
    report = ReportBuilder("closure", "associativity", "group_identity", "inverse", "invariance")
    points, table, D = g.points, g.op_table, g.space.metric
    carrier = set(points)

    closed = True
    for p in points:
        for q in points:
            if table.get((p, q)) not in carrier:
                report.fail("closure", (p, q))
                closed = False
    if not closed:
        return report.build()

    for p in points:
        for q in points:
            for r in points:
                if table[(table[(p, q)], r)] != table[(p, table[(q, r)])]:
                    report.fail("associativity", (p, q, r))

    e = g.identity
    for x in points:
        if table[(e, x)] != x or table[(x, e)] != x:
            report.fail("group_identity", (x,))
        y = g.inverse.get(x)
        if y is None or table[(x, y)] != e or table[(y, x)] != e:
            report.fail("inverse", (x,))

    for p in points:
        for q in points:
            for r in points:
                right = D[(table[(p, r)], table[(q, r)])]
                if right != D[(p, q)]:
                    report.fail("invariance", (p, q, r), right, D[(p, q)])
                left = D[(table[(r, p)], table[(r, q)])]
                if left != D[(p, q)]:
                    report.fail("invariance", (r, p, q), left, D[(p, q)])
    return report.build()


def validate_classical_metric(points: Sequence[Point], d: ClassicalMetric) -> Report:
    """Enumerate the metric axioms for a total table of nonnegative rationals."""
    report = ReportBuilder("nonnegative", "identity", "symmetry", "triangle")
    for p in points:
        for q in points:
            value = d[(p, q)]
            if value < 0:
                report.fail("nonnegative", (p, q))
            if (p == q) != (value == 0):
                report.fail("identity", (p, q))
            if value != d[(q, p)]:
                report.fail("symmetry", (p, q))
            for r in points:
                if d[(p, r)] > value + d[(q, r)]:
                    report.fail("triangle", (p, q, r))
    return report.build()


def _classical_table(points: Sequence[Point], d: Mapping[Pair, Any]) -> Dict[Pair, Fraction]:
    raw = symmetric_table(points, d, Fraction(0))
    table = {pair: to_rational(v) for pair, v in raw.items()}
    report = validate_classical_metric(points, table)
    if not report.passed:
        v = report.first()
        raise MetricError(f"Classical table is not a metric: {v.axiom} fails", v.witness)
    return table


def check_heaviside_sum(tf: TriangleFn, values: Iterable[Fraction]) -> None:
    """Check H_a * H_b = H_{a+b} for every pair of the given times.

    Raises:
        MetricError: At the first failing pair
    """
    values = sorted(set(values))
    for i, a in enumerate(values):
        for b in values[i:]:
            got = tf(heaviside(a), heaviside(b))
            if got != heaviside(a + b):
                raise MetricError(f"{tf.tag} fails H_a * H_b = H_(a+b)", (a, b))


def menger_from_classical(points: Sequence[Point], d: Mapping[Pair, Any], tf: TriangleFn) -> ProbSpace:
    """Lift a classical metric to D(p,q) = H_{d(p,q)}.

    ``d`` may list each unordered pair once; the diagonal defaults to 0.

    Raises:
        MetricError: If d is not a metric or tf fails the Heaviside-sum law
            on the distances involved
    """
    points = tuple(points)
    table = _classical_table(points, d)
    check_heaviside_sum(tf, table.values())
    return ProbSpace(points, {pair: heaviside(v) for pair, v in table.items()}, tf)


def scale_metric(s: ProbSpace, k) -> Dict[Pair, DistFn]:
    """Return the table D_k(p,q)(t) = D(p,q)(t/k); k = 0 gives all H_0.

    The result is a raw table: for k = 0 it is not a metric.

    Raises:
        PreconditionError: If k is negative
    """
    k = to_rational(k)
    if k < 0:
        raise PreconditionError(f"Scale factor must be nonnegative, got {k}")
    return {pair: F.scaled(k) for pair, F in s.metric.items()}


def discrete_space(points: Sequence[Point], tf: TriangleFn) -> ProbSpace:
    """D(p,p) = H_0 and D(p,q) = H_inf for p != q."""
    points = tuple(points)
    if not points:
        raise PreconditionError("discrete_space needs at least one point")
    return ProbSpace(points, {(p, q): H0 if p == q else HINF for p in points for q in points}, tf)


def simple_space(points: Sequence[Point], d: Mapping[Pair, Any], G: DistFn, tf: TriangleFn) -> ProbSpace:
    """The simple space D(p,q)(t) = G(t / d(p,q)) for a classical metric d.

    G = H_1 gives the Menger lift of d and G = H_inf the discrete space.

    Raises:
        PreconditionError: If G is H_0
        MetricError: If d is not a metric
    """
    if G == H0:
        raise PreconditionError("simple_space needs G != H_0")
    points = tuple(points)
    table = _classical_table(points, d)
    return ProbSpace(points, {pair: G.scaled(v) for pair, v in table.items()}, tf)


def word_lengths(elements: Sequence[Point], op: Mapping[Pair, Point], identity: Point,
                 generators: Iterable[Point]) -> Dict[Point, int]:
    """Breadth-first word length of every element over ``generators`` and their inverses.

    Raises:
        PreconditionError: If the generators do not generate the group
    """
    gens = set(generators)
    for g in list(gens):
        gens.update(y for y in elements if op[(g, y)] == identity)
    lengths = {identity: 0}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in sorted(gens, key=str):
            y = op[(x, g)]
            if y not in lengths:
                lengths[y] = lengths[x] + 1
                queue.append(y)
    if len(lengths) != len(elements):
        raise PreconditionError(f"Generators {sorted(map(str, gens))} do not generate the group")
    return lengths


def word_metric_group(elements: Sequence[Point], op: Union[Mapping[Pair, Point], Callable[[Point, Point], Point]],
                      generators: Iterable[Point], tf: TriangleFn,
                      G: Optional[DistFn] = None) -> ProbGroup:
    """An invariant probabilistic metric group from a Cayley word metric.

    d(a, b) = |a^-1 b| over the generators; it is two-sided invariant
    when the generating set is closed under conjugation. The metric is
    lifted through :func:`simple_space` with ``G`` (default H_1).
    """
    elements = tuple(elements)
    table = op if isinstance(op, Mapping) else {(a, b): op(a, b) for a in elements for b in elements}
    table = dict(table)
    identity = next(e for e in elements
                    if all(table[(e, x)] == x and table[(x, e)] == x for x in elements))
    inverse = {x: next(y for y in elements if table[(x, y)] == identity) for x in elements}
    lengths = word_lengths(elements, table, identity, generators)
    d = {(a, b): Fraction(lengths[table[(inverse[a], b)]]) for a in elements for b in elements}
    space = simple_space(elements, d, G if G is not None else heaviside(1), tf)
    return ProbGroup(space, table, identity, inverse)


def _default_tf(tf: Optional[TriangleFn]) -> TriangleFn:
    return tf if tf is not None else sup_triangle(TNorm.MINIMUM)


def cyclic_group(n: int, tf: Optional[TriangleFn] = None, G: Optional[DistFn] = None) -> ProbGroup:
    """Z_n on labels "0".."n-1" with the cyclic word metric."""
    if n < 1:
        raise PreconditionError(f"Cyclic group order must be positive, got {n}")
    elements = [str(i) for i in range(n)]
    generators = ["1"] if n > 1 else []
    return word_metric_group(elements, lambda a, b: str((int(a) + int(b)) % n), generators, _default_tf(tf), G)


def klein_group(tf: Optional[TriangleFn] = None, G: Optional[DistFn] = None) -> ProbGroup:
    """Z_2 x Z_2 on labels "00", "01", "10", "11"."""
    elements = ["00", "01", "10", "11"]

    def xor(a: str, b: str) -> str:
        return "".join("1" if x != y else "0" for x, y in zip(a, b))
    return word_metric_group(elements, xor, ["01", "10"], _default_tf(tf), G)


def symmetric_group_3(tf: Optional[TriangleFn] = None, G: Optional[DistFn] = None) -> ProbGroup:
    """S_3 on one-line permutation labels, generated by all transpositions."""
    elements = ["012", "021", "102", "120", "201", "210"]

    def compose(a: str, b: str) -> str:
        return "".join(a[int(b[i])] for i in range(3))
    return word_metric_group(elements, compose, ["021", "102", "210"], _default_tf(tf), G)


def singleton_group(tf: Optional[TriangleFn] = None) -> ProbGroup:
    return word_metric_group(["e"], {("e", "e"): "e"}, [], _default_tf(tf))


def relabel_group(g: ProbGroup, mapping: Mapping[Point, Point]) -> ProbGroup:
    """Transport a group along a bijection of labels.

    Raises:
        PreconditionError: If ``mapping`` is not a bijection onto new labels
    """
    if set(mapping) != set(g.points) or len(set(mapping.values())) != len(g.points):
        raise PreconditionError("Relabelling must be a bijection defined on every point")
    points = tuple(mapping[p] for p in g.points)
    metric = {(mapping[p], mapping[q]): F for (p, q), F in g.space.metric.items()}
    table = {(mapping[p], mapping[q]): mapping[r] for (p, q), r in g.op_table.items()}
    inverse = {mapping[p]: mapping[q] for p, q in g.inverse.items()}
    return ProbGroup(ProbSpace(points, metric, g.tf), table, mapping[g.identity], inverse)
