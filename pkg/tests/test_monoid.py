import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from pmskit.distributions import H0, HINF, WeakTolerance, heaviside, pointwise_sup
from pmskit.errors import IsomorphismError, PreconditionError, StructuralError
from pmskit.generators import random_lipmap, random_raw_map, random_relabel
from pmskit.lipschitz import LipMap, delta_embed, is_one_lipschitz, shift_map
from pmskit.monoid import (IsoWitness, MonoidIsoOracle, bar_d, big_d, check_monoid_iso, delta_identity,
                           delta_image, inverse_bruteforce_oracle, is_monoid_element, is_unit, pi_finite,
                           recover_iso, sup_conv_maps, transport_iso, unit_candidates, verify_isometric_iso)
from pmskit.spaces import ProbGroup, cyclic_group, singleton_group
from pmskit.tnorms import TNorm, infdual_triangle
from strategies import GROUP_NAMES, PRODUCT, build_group, distfns, rngs, sup_triangles


def deltas(g):
    return {x: delta_embed(g.space, x) for x in g.points}


def brute_product(g, f, h):
    """(f . h)(x) by enumerating every factorization x = y z."""
    values = {}
    for x in g.points:
        terms = [g.tf(f(y), h(z)) for y in g.points for z in g.points if g.mul(y, z) == x]
        values[x] = pointwise_sup(terms)
    return LipMap(g.space, values)


class TestProduct:
    def test_deltas_multiply_like_points(self, group):
        d = deltas(group)
        for a in group.points:
            for b in group.points:
                assert sup_conv_maps(group, d[a], d[b]) == d[group.mul(a, b)]

    def test_delta_e_is_identity(self, group):
        e = delta_identity(group)
        f = random_lipmap(random.Random(1), group.space)
        assert sup_conv_maps(group, f, e) == f
        assert sup_conv_maps(group, e, f) == f

    @settings(max_examples=40, deadline=None)
    @given(rngs())
    def test_matches_double_loop(self, rng):
        g = cyclic_group(3, PRODUCT)
        f, h = random_lipmap(rng, g.space), random_lipmap(rng, g.space)
        assert sup_conv_maps(g, f, h) == brute_product(g, f, h)

    @pytest.mark.parametrize("name", GROUP_NAMES)
    @settings(max_examples=100, deadline=None)
    @given(rng=rngs())
    def test_associative_and_closed(self, name, rng):
        g = build_group(name)
        f, h, k = (random_lipmap(rng, g.space) for _ in range(3))
        fh = sup_conv_maps(g, f, h)
        assert is_one_lipschitz(g.space, fh).passed
        assert sup_conv_maps(g, fh, k) == sup_conv_maps(g, f, sup_conv_maps(g, h, k))

    def test_rejects_infdual(self):
        g = cyclic_group(2, infdual_triangle(TNorm.MINIMUM))
        d = deltas(g)
        with pytest.raises(PreconditionError):
            sup_conv_maps(g, d["0"], d["1"])

    def test_rejects_foreign_maps(self, z3):
        other = cyclic_group(2, PRODUCT)
        with pytest.raises(PreconditionError):
            sup_conv_maps(z3, delta_embed(other.space, "0"), delta_identity(z3))


class TestMembership:
    @pytest.mark.parametrize("name", GROUP_NAMES)
    @settings(max_examples=100, deadline=None)
    @given(rng=rngs())
    def test_lipschitz_iff_fixed_by_delta_e(self, name, rng):
        g = build_group(name)
        f = random_raw_map(rng, g.space) if rng.random() < 0.5 else random_lipmap(rng, g.space)
        assert is_monoid_element(g, f) == is_one_lipschitz(g.space, f).passed

    def test_delta_maps_are_members(self, group):
        assert all(is_monoid_element(group, d) for d in deltas(group).values())


class TestMetrics:
    def test_big_d_on_deltas(self, group):
        d = deltas(group)
        for a in group.points:
            assert big_d(d[a], d[a]) == H0
            for b in group.points:
                assert big_d(d[a], d[b]) == group.space.distance(a, b)

    @settings(max_examples=30, deadline=None)
    @given(rngs())
    def test_big_d_is_sup_over_carrier(self, rng):
        g = cyclic_group(3, PRODUCT)
        f, h = random_lipmap(rng, g.space), random_lipmap(rng, g.space)
        assert big_d(f, h) == pointwise_sup([g.tf(f(x), h(x)) for x in g.points])

    def test_big_d_invariance(self, group):
        d = deltas(group)
        for a in group.points:
            for b in group.points:
                for c in group.points:
                    lhs = big_d(sup_conv_maps(group, d[a], d[c]), sup_conv_maps(group, d[b], d[c]))
                    assert lhs == big_d(d[a], d[b])

    def test_bar_d_cases(self, z3):
        cert = pi_finite(z3)
        d = deltas(z3)
        f = shift_map(d["0"], heaviside(1))
        assert bar_d(d["1"], d["2"], cert) == z3.space.distance("1", "2")
        assert bar_d(f, f, cert) == H0
        assert bar_d(f, d["0"], cert) == HINF
        assert bar_d(d["0"], f) == HINF

    @pytest.mark.parametrize("name", GROUP_NAMES)
    @settings(max_examples=20, deadline=None)
    @given(rng=rngs())
    def test_bar_d_axioms_on_mixed_family(self, name, rng):
        g = build_group(name)
        cert = pi_finite(g)
        family = list(deltas(g).values()) + [random_lipmap(rng, g.space) for _ in range(3)]
        for f in family:
            for h in family:
                assert (bar_d(f, h, cert) == H0) == (f == h)
                assert bar_d(f, h, cert) == bar_d(h, f, cert)
                for k in family:
                    lhs = g.tf(bar_d(f, h, cert), bar_d(h, k, cert))
                    assert pointwise_sup([lhs, bar_d(f, k, cert)]) == bar_d(f, k, cert)

    def test_big_d_needs_one_carrier(self, z3):
        other = cyclic_group(2, PRODUCT)
        with pytest.raises(PreconditionError):
            big_d(delta_identity(z3), delta_identity(other))


class TestPi:
    def test_singleton(self):
        g = singleton_group(PRODUCT)
        cert = pi_finite(g)
        assert len(cert) == 1
        assert delta_identity(g) in cert
        assert cert.separation == 1

    def test_z2_separation(self):
        cert = pi_finite(cyclic_group(2, PRODUCT), WeakTolerance(Fraction(1, 1024)))
        assert cert.separation == 1
        assert len(cert) == 2

    def test_size_matches_carrier(self, group):
        cert = pi_finite(group)
        assert len(cert) == len(group.points)
        assert cert.members == delta_image(group.space)
        assert cert.separation > 0


class TestUnits:
    def test_delta_inverse(self, group):
        d = deltas(group)
        for x in group.points:
            inverse = is_unit(group, d[x])
            assert inverse == d[group.inv(x)]
            assert sup_conv_maps(group, d[x], inverse) == delta_identity(group)

    def test_shifted_identity_is_not_a_unit(self, z3):
        assert is_unit(z3, shift_map(delta_identity(z3), heaviside(1))) is None

    def test_oracle_on_deltas(self, z3):
        d = deltas(z3)
        candidates = list(d.values())
        assert inverse_bruteforce_oracle(z3, d["1"], candidates) == d["2"]
        assert inverse_bruteforce_oracle(z3, d["0"], candidates) == d["0"]

    def test_oracle_finds_nothing_for_non_delta(self, z3):
        rng = random.Random(5)
        candidates = list(deltas(z3).values()) + [random_lipmap(rng, z3.space) for _ in range(50)]
        f = pointwise_sup_map(z3, deltas(z3)["0"], deltas(z3)["1"])
        assert inverse_bruteforce_oracle(z3, f, candidates) is None

    def test_units_of_candidate_family_are_exactly_deltas(self, group):
        family = unit_candidates(group, random.Random(11), 10)
        d = set(deltas(group).values())
        assert d <= set(family)
        for f in family:
            analytic = is_unit(group, f)
            assert analytic == inverse_bruteforce_oracle(group, f, family)
            assert (analytic is not None) == (f in d)

    def test_rejects_infdual(self):
        g = cyclic_group(2, infdual_triangle(TNorm.PRODUCT))
        with pytest.raises(PreconditionError):
            is_unit(g, delta_identity(g))


def pointwise_sup_map(g, f, h):
    return LipMap(g.space, {x: pointwise_sup([f(x), h(x)]) for x in g.points})


class TestIsometricIso:
    def test_relabelling_passes(self, group):
        copy, forward = random_relabel(random.Random(2), group)
        assert verify_isometric_iso(group, copy, IsoWitness.from_forward(forward)).passed

    def test_identity(self, group):
        assert verify_isometric_iso(group, group, IsoWitness.identity(group)).passed

    def test_not_a_homomorphism(self, z3):
        swap = IsoWitness.from_forward({"0": "1", "1": "0", "2": "2"})
        report = verify_isometric_iso(z3, z3, swap)
        assert "homomorphism" in report.axioms_violated()
        assert len(report.first("homomorphism").witness) == 2

    def test_metric_mismatch(self):
        gA = cyclic_group(2, PRODUCT)
        gB = cyclic_group(2, PRODUCT, G=heaviside(2))
        report = verify_isometric_iso(gA, gB, IsoWitness.identity(gA))
        assert report.axioms_violated() == ("isometry",)
        v = report.first()
        assert v.witness == ("0", "1")
        assert v.lhs == heaviside(2) and v.rhs == heaviside(1)

    def test_not_a_bijection(self, z3):
        report = verify_isometric_iso(z3, z3, IsoWitness.from_forward({"0": "0", "1": "0", "2": "2"}))
        assert report.axioms_violated() == ("bijection",)


class TestBanachStone:
    def test_transport_sends_deltas_to_deltas(self, group):
        copy, forward = random_relabel(random.Random(4), group)
        phi = transport_iso(group, copy, IsoWitness.from_forward(forward))
        for a in group.points:
            assert phi(delta_embed(group.space, a)) == delta_embed(copy.space, forward[a])

    def test_identity_transport(self, z3):
        phi = transport_iso(z3, z3, IsoWitness.identity(z3))
        f = random_lipmap(random.Random(8), z3.space)
        assert phi(f) == f

    def test_transport_rejects_bad_witness(self, z3):
        with pytest.raises(IsomorphismError) as info:
            transport_iso(z3, z3, IsoWitness.from_forward({"0": "1", "1": "0", "2": "2"}))
        assert not info.value.report.passed

    @pytest.mark.parametrize("name", GROUP_NAMES)
    @settings(max_examples=20, deadline=None)
    @given(rng=rngs())
    def test_round_trip(self, name, rng):
        g = build_group(name)
        copy, forward = random_relabel(rng, g)
        iso = IsoWitness.from_forward(forward)
        phi = transport_iso(g, copy, iso)
        recovered = recover_iso(g, copy, phi)
        assert recovered == iso
        again = transport_iso(g, copy, recovered)
        for d in deltas(g).values():
            assert again(d) == phi(d)

    def test_identity_recovery(self, group):
        phi = MonoidIsoOracle(lambda f: f, pure=True)
        assert recover_iso(group, group, phi) == IsoWitness.identity(group)

    def test_non_delta_image(self, group):
        d = deltas(group)
        corrupted = group.points[1]
        images = {a: dict(f.values) for a, f in d.items()}
        images[corrupted] = dict(shift_map(d[corrupted], heaviside(1)).values)
        phi = MonoidIsoOracle.from_delta_images(group, group, images)
        with pytest.raises(StructuralError) as info:
            recover_iso(group, group, phi)
        assert info.value.point == corrupted

    def test_repeated_image(self, z3):
        d = deltas(z3)
        phi = MonoidIsoOracle(lambda f: d["0"])
        with pytest.raises(StructuralError):
            recover_iso(z3, z3, phi)

    def test_table_oracle_only_knows_deltas(self, z3):
        images = {a: dict(f.values) for a, f in deltas(z3).items()}
        phi = MonoidIsoOracle.from_delta_images(z3, z3, images)
        with pytest.raises(PreconditionError):
            phi(shift_map(delta_identity(z3), heaviside(1)))
        with pytest.raises(PreconditionError):
            MonoidIsoOracle.from_delta_images(z3, z3, {"0": images["0"]})

    def test_check_monoid_iso(self, group):
        rng = random.Random(9)
        copy, forward = random_relabel(rng, group)
        phi = transport_iso(group, copy, IsoWitness.from_forward(forward))
        family = list(deltas(group).values()) + [random_lipmap(rng, group.space) for _ in range(10)]
        assert len(family) ** 2 >= 100
        assert check_monoid_iso(group, copy, phi, family).passed
        assert check_monoid_iso(group, copy, phi, family, max_workers=3).passed

    def test_check_monoid_iso_catches_a_wrong_phi(self, z3):
        copy, forward = random_relabel(random.Random(6), z3)
        true_phi = transport_iso(z3, copy, IsoWitness.from_forward(forward))
        wrong = MonoidIsoOracle(lambda f: shift_map(true_phi(f), heaviside(1)))
        report = check_monoid_iso(z3, copy, wrong, list(deltas(z3).values()))
        assert not report.passed
        assert "product" in report.axioms_violated()

    def test_singleton_groups_identify(self):
        gA = singleton_group(PRODUCT)
        gB = ProbGroup.from_table(singleton_group(PRODUCT).space, {("e", "e"): "e"})
        phi = transport_iso(gA, gB, IsoWitness.identity(gA))
        assert recover_iso(gA, gB, phi) == IsoWitness.identity(gA)

    @settings(max_examples=100, deadline=None)
    @given(sup_triangles(), distfns(), distfns())
    def test_singleton_product_is_the_triangle_function(self, tf, F, L):
        g = singleton_group(tf)
        f, h = LipMap(g.space, {"e": F}), LipMap(g.space, {"e": L})
        assert is_monoid_element(g, f)
        assert sup_conv_maps(g, f, h) == LipMap(g.space, {"e": tf(F, L)})
        assert big_d(f, h) == tf(F, L)


class TestShifts:
    @pytest.mark.parametrize("name", GROUP_NAMES)
    @settings(max_examples=30, deadline=None)
    @given(rng=rngs(), U=distfns(max_jumps=3), V=distfns(max_jumps=3))
    def test_product_of_shifts_is_shift_of_product(self, name, rng, U, V):
        g = build_group(name)
        f, h = random_lipmap(rng, g.space), random_lipmap(rng, g.space)
        lhs = sup_conv_maps(g, shift_map(f, U), shift_map(h, V))
        assert lhs == shift_map(sup_conv_maps(g, f, h), g.tf(U, V))
