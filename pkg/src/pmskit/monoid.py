"""The sup-convolution monoid of 1-Lipschitz maps over a finite invariant group.

``(f . h)(x) = sup over y of f(y) * h(y^-1 x)`` makes the 1-Lipschitz maps a
monoid with identity delta_e. Over a finite carrier the completion of the
delta image is the delta image itself, which is what :func:`pi_finite`
certifies, and the units are exactly the delta maps.
"""

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Dict, FrozenSet, List, Mapping, Optional, Sequence

from .distributions import H0, HINF, DistFn, WeakTolerance, pointwise_sup, sibley_distance
from .errors import IsomorphismError, PreconditionError, StructuralError
from .lipschitz import LipMap, delta_embed, shift_map
from .report import Report, ReportBuilder
from .spaces import Point, ProbGroup, ProbSpace

logger = logging.getLogger(__name__)


def _require_sup_continuous(g: ProbGroup, operation: str) -> None:
    if not g.tf.sup_continuous:
        raise PreconditionError(f"{operation} needs a sup-continuous triangle function, got {g.tf.tag}")


def _require_over(g: ProbGroup, *maps: LipMap) -> None:
    for f in maps:
        if f.space.points != g.points:
            raise PreconditionError(f"{f!r} is not a map over this group's carrier")


def sup_conv_maps(g: ProbGroup, f: LipMap, h: LipMap) -> LipMap:
    """(f . h)(x) = sup over y of f(y) * h(y^-1 x).

    Raises:
        PreconditionError: If the triangle function is not sup-continuous
            or a map lives on another carrier
    """
    _require_sup_continuous(g, "sup_conv_maps")
    _require_over(g, f, h)
    tf = g.tf
    values = {}
    for x in g.points:
        values[x] = pointwise_sup([tf(f.values[y], h.values[g.mul(g.inv(y), x)]) for y in g.points])
    return LipMap(g.space, values)


def delta_identity(g: ProbGroup) -> LipMap:
    return delta_embed(g.space, g.identity)


def is_monoid_element(g: ProbGroup, f: LipMap) -> bool:
    """f . delta_e = delta_e . f = f, which holds exactly for 1-Lipschitz f."""
    e = delta_identity(g)
    return sup_conv_maps(g, f, e) == f and sup_conv_maps(g, e, f) == f


def big_d(f: LipMap, h: LipMap) -> DistFn:
    """D(f, h) = sup over x of f(x) * h(x)."""
    if f.space.points != h.space.points:
        raise PreconditionError("big_d needs two maps over the same carrier")
    tf = f.space.tf
    return pointwise_sup([tf(f.values[x], h.values[x]) for x in f.space.points])


def delta_image(s: ProbSpace) -> FrozenSet[LipMap]:
    return frozenset(delta_embed(s, x) for x in s.points)


@dataclass(frozen=True)
class PiCertificate:
    """The completion of the delta image of a finite group, with its proof.

    ``separation`` is the least Sibley distance from D(p, q) to H_0 over
    p != q (1 on a single point). Being positive, it forces every Cauchy
    sequence of delta maps to be eventually constant, so the completion
    adds nothing.
    """
    members: FrozenSet[LipMap]
    separation: Fraction
    tolerance: WeakTolerance

    def __contains__(self, f: LipMap) -> bool:
        return f in self.members

    def __len__(self) -> int:
        return len(self.members)


def pi_finite(g: ProbGroup, tol: Optional[WeakTolerance] = None) -> PiCertificate:
    """Return {delta_x} with the separation certificate for a finite group."""
    tol = tol or WeakTolerance.default()
    points, D = g.points, g.space.metric
    gaps = [sibley_distance(D[(p, q)], H0, tol) for p in points for q in points if p != q]
    separation = min(gaps) if gaps else Fraction(1)
    if separation <= 0:
        raise PreconditionError("Off-diagonal distance equal to H_0; the carrier is not a metric space")
    return PiCertificate(delta_image(g.space), separation, tol)


def bar_d(f: LipMap, h: LipMap, cert: Optional[PiCertificate] = None) -> DistFn:
    """Discrete extension of D to all 1-Lipschitz maps.

    D(f, h) when both maps are delta maps, H_0 when f = h, H_inf otherwise.
    """
    return _bar_d(f, h, cert.members if cert is not None else delta_image(f.space))


def _bar_d(f: LipMap, h: LipMap, members: FrozenSet[LipMap]) -> DistFn:
    if f in members and h in members:
        return big_d(f, h)
    if f == h:
        return H0
    return HINF


def is_unit(g: ProbGroup, f: LipMap) -> Optional[LipMap]:
    """Return the inverse of f under . when it has one, else None.

    With a sup-continuous triangle function on a finite group the units
    are exactly the delta maps, and delta_x has inverse delta_{x^-1}.
    """
    _require_sup_continuous(g, "is_unit")
    _require_over(g, f)
    for x in g.points:
        if delta_embed(g.space, x) == f:
            return delta_embed(g.space, g.inv(x))
    return None


def inverse_bruteforce_oracle(g: ProbGroup, f: LipMap, candidates: Sequence[LipMap]) -> Optional[LipMap]:
    """First candidate c with f . c = c . f = delta_e, found by trying them all."""
    e = delta_identity(g)
    for c in candidates:
        if sup_conv_maps(g, f, c) == e and sup_conv_maps(g, c, f) == e:
            return c
    return None


def unit_candidates(g: ProbGroup, rng: random.Random, n: int) -> List[LipMap]:
    """Candidate family for unit searches.

    All delta maps, each delta shifted by a random distribution, pointwise
    sups of pairs of delta maps, and ``n`` random 1-Lipschitz maps. Entries
    are distinct and in a deterministic order for a given rng state.
    """
    from .generators import random_distfn, random_lipmap

    deltas = [delta_embed(g.space, x) for x in g.points]
    family = list(deltas)
    family += [shift_map(d, random_distfn(rng)) for d in deltas]
    for i, d1 in enumerate(deltas):
        for d2 in deltas[i + 1:]:
            family.append(LipMap(g.space, {x: pointwise_sup([d1.values[x], d2.values[x]]) for x in g.points}))
    family += [random_lipmap(rng, g.space) for _ in range(n)]
    return list(dict.fromkeys(family))


@dataclass(frozen=True, eq=False)
class IsoWitness:
    """A point bijection between two groups and its inverse."""
    forward: Mapping[Point, Point]
    backward: Mapping[Point, Point]

    def __post_init__(self) -> None:
        object.__setattr__(self, 'forward', MappingProxyType(dict(self.forward)))
        object.__setattr__(self, 'backward', MappingProxyType(dict(self.backward)))

    @classmethod
    def from_forward(cls, forward: Mapping[Point, Point]) -> 'IsoWitness':
        """Build from the forward map; a non-injective map yields a witness that fails verification."""
        return cls(forward, {b: a for a, b in forward.items()})

    @classmethod
    def identity(cls, g: ProbGroup) -> 'IsoWitness':
        return cls.from_forward({x: x for x in g.points})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IsoWitness):
            return NotImplemented
        return dict(self.forward) == dict(other.forward) and dict(self.backward) == dict(other.backward)

    def __hash__(self) -> int:
        return hash(frozenset(self.forward.items()))


def verify_isometric_iso(gA: ProbGroup, gB: ProbGroup, iso: IsoWitness) -> Report:
    """Check that iso is a bijection, a homomorphism and an isometry."""
    report = ReportBuilder("bijection", "homomorphism", "isometry")
    fwd, bwd = iso.forward, iso.backward
    points_b = set(gB.points)

    for a in gA.points:
        b = fwd.get(a)
        if b not in points_b or bwd.get(b) != a:
            report.fail("bijection", (a,))
    for b in gB.points:
        a = bwd.get(b)
        if a is None or fwd.get(a) != b:
            report.fail("bijection", (b,))
    if len(gA.points) != len(gB.points):
        report.fail("bijection", (len(gA.points), len(gB.points)))
    partial = report.build()
    if not partial.passed:
        return partial

    DA, DB = gA.space.metric, gB.space.metric
    for p in gA.points:
        for q in gA.points:
            if fwd[gA.mul(p, q)] != gB.mul(fwd[p], fwd[q]):
                report.fail("homomorphism", (p, q))
            if DB[(fwd[p], fwd[q])] != DA[(p, q)]:
                report.fail("isometry", (p, q), DB[(fwd[p], fwd[q])], DA[(p, q)])
    return report.build()


@dataclass(frozen=True)
class MonoidIsoOracle:
    """A callable standing for a monoid isomorphism between two Lip monoids.

    ``pure`` declares that ``apply`` has no side effects, which allows
    :meth:`map_many` to spread evaluations over threads.
    """
    apply: Callable[[LipMap], LipMap]
    pure: bool = False
    source: str = field(default="callable", compare=False)

    def __call__(self, f: LipMap) -> LipMap:
        return self.apply(f)

    def map_many(self, maps: Sequence[LipMap], max_workers: Optional[int] = None) -> List[LipMap]:
        if not self.pure or not max_workers or max_workers <= 1:
            return [self.apply(f) for f in maps]
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            return list(executor.map(self.apply, maps))

    @classmethod
    def from_delta_images(cls, gA: ProbGroup, gB: ProbGroup,
                          images: Mapping[Point, Mapping[Point, DistFn]]) -> 'MonoidIsoOracle':
        """An oracle known only on delta maps, from a table a -> Phi(delta_a).

        Raises:
            PreconditionError: If a point of gA has no image
        """
        missing = [a for a in gA.points if a not in images]
        if missing:
            raise PreconditionError(f"No image given for delta_{missing[0]}")
        by_delta = {delta_embed(gA.space, a): LipMap(gB.space, images[a]) for a in gA.points}

        def apply(f: LipMap) -> LipMap:
            try:
                return by_delta[f]
            except KeyError:
                raise PreconditionError("This oracle is only defined on delta maps") from None
        return cls(apply, pure=True, source="table")


def transport_iso(gA: ProbGroup, gB: ProbGroup, iso: IsoWitness) -> MonoidIsoOracle:
    """Phi(f) = f o iso^-1, the monoid isomorphism induced by an isometric iso.

    Raises:
        IsomorphismError: If iso fails :func:`verify_isometric_iso`
    """
    report = verify_isometric_iso(gA, gB, iso)
    if not report.passed:
        v = report.first()
        raise IsomorphismError(f"Not an isometric isomorphism: {v.axiom} fails at {v.witness}", report)
    backward = dict(iso.backward)

    def apply(f: LipMap) -> LipMap:
        _require_over(gA, f)
        return LipMap(gB.space, {y: f.values[backward[y]] for y in gB.points})
    return MonoidIsoOracle(apply, pure=True, source="transport")


def recover_iso(gA: ProbGroup, gB: ProbGroup, phi: MonoidIsoOracle) -> IsoWitness:
    """Read the point isomorphism off phi's action on delta maps.

    Raises:
        StructuralError: If phi sends some delta_a to a map that is not a
            delta map of gB, or two points to the same delta map
        IsomorphismError: If the induced bijection is not an isometric iso
    """
    _require_sup_continuous(gA, "recover_iso")
    _require_sup_continuous(gB, "recover_iso")
    deltas_b: Dict[LipMap, Point] = {delta_embed(gB.space, b): b for b in gB.points}
    forward: Dict[Point, Point] = {}
    for a in gA.points:
        image = phi(delta_embed(gA.space, a))
        b = deltas_b.get(image)
        if b is None:
            raise StructuralError(f"phi(delta_{a}) is not a delta map", point=a)
        if b in forward.values():
            raise StructuralError(f"phi sends two delta maps to delta_{b}", point=a)
        forward[a] = b

    iso = IsoWitness.from_forward(forward)
    report = verify_isometric_iso(gA, gB, iso)
    if not report.passed:
        v = report.first()
        raise IsomorphismError(f"Recovered bijection fails {v.axiom} at {v.witness}", report)
    logger.info(f"Recovered isomorphism on {len(forward)} points")
    return iso


def check_monoid_iso(gA: ProbGroup, gB: ProbGroup, phi: MonoidIsoOracle,
                     family: Sequence[LipMap], max_workers: Optional[int] = None) -> Report:
    """Check that phi preserves . and the discrete metric on every pair of ``family``."""
    report = ReportBuilder("product", "bar_d")
    cert_a, cert_b = delta_image(gA.space), delta_image(gB.space)
    family = list(family)
    images = phi.map_many(family, max_workers)

    for i, f in enumerate(family):
        for j, h in enumerate(family):
            lhs = phi(sup_conv_maps(gA, f, h))
            rhs = sup_conv_maps(gB, images[i], images[j])
            if lhs != rhs:
                report.fail("product", (i, j))
            d_a = _bar_d(f, h, cert_a)
            d_b = _bar_d(images[i], images[j], cert_b)
            if d_a != d_b:
                report.fail("bar_d", (i, j), d_b, d_a)
    return report.build()

