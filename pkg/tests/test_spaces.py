import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis.strategies import integers

from pmskit.distributions import H0, HINF, heaviside
from pmskit.errors import MetricError, PreconditionError
from pmskit.generators import random_classical_metric, random_space
from pmskit.spaces import (ProbGroup, ProbSpace, check_heaviside_sum, cyclic_group, discrete_space,
                           menger_from_classical, relabel_group, scale_metric, simple_space, singleton_group,
                           symmetric_table, validate_classical_metric, validate_invariant_group, validate_space,
                           word_metric_group)
from pmskit.tnorms import TNorm, infdual_triangle, sup_triangle
from strategies import rngs, sup_triangles

SUP_MIN = sup_triangle(TNorm.MINIMUM)
SUP_PRODUCT = sup_triangle(TNorm.PRODUCT)


def space_from(points, entries, tf=SUP_MIN):
    return ProbSpace(tuple(points), symmetric_table(points, entries, H0), tf)


class TestTables:
    def test_mirrors_and_fills_diagonal(self):
        table = symmetric_table(["a", "b"], {("a", "b"): heaviside(1)}, H0)
        assert table[("b", "a")] == heaviside(1)
        assert table[("a", "a")] == H0

    def test_missing_pair(self):
        with pytest.raises(PreconditionError):
            symmetric_table(["a", "b", "c"], {("a", "b"): heaviside(1)}, H0)

    def test_unknown_point(self):
        with pytest.raises(PreconditionError):
            symmetric_table(["a"], {("a", "z"): heaviside(1)}, H0)

    def test_space_needs_total_table(self):
        with pytest.raises(ValueError):
            ProbSpace(("a", "b"), {("a", "a"): H0}, SUP_MIN)
        with pytest.raises(ValueError):
            ProbSpace(("a", "a"), {("a", "a"): H0}, SUP_MIN)

    def test_restrict(self):
        s = space_from("abc", {("a", "b"): heaviside(1), ("b", "c"): heaviside(1), ("a", "c"): heaviside(2)})
        sub = s.restrict(["c", "a"])
        assert sub.points == ("a", "c")
        assert sub.distance("a", "c") == heaviside(2)
        assert "b" not in sub and "a" in sub
        with pytest.raises(PreconditionError):
            s.restrict(["z"])


class TestValidateSpace:
    def test_diagonal_must_be_h0(self):
        s = space_from("ab", {("a", "a"): heaviside(1), ("a", "b"): heaviside(1)})
        report = validate_space(s)
        assert not report.passed
        assert report.first("identity").witness == ("a",)

    def test_distinct_points_at_h0(self):
        s = space_from("ab", {("a", "b"): H0})
        assert validate_space(s).first("identity").witness == ("a", "b")

    def test_triangle_violation_carries_both_sides(self):
        s = space_from("abc", {("a", "b"): heaviside(1), ("b", "c"): heaviside(1), ("a", "c"): heaviside(5)})
        v = validate_space(s).first("triangle")
        assert v.witness == ("a", "b", "c")
        assert v.lhs == heaviside(2)
        assert v.rhs == heaviside(5)

    def test_asymmetric_table(self):
        entries = {("a", "b"): heaviside(1), ("b", "a"): heaviside(2)}
        report = validate_space(space_from("ab", entries))
        assert "symmetry" in report.axioms_violated()

    def test_discrete_space(self):
        assert validate_space(discrete_space(["p"], SUP_MIN)).passed
        s = discrete_space(["p", "q", "r"], SUP_PRODUCT)
        assert s.distance("p", "q") == HINF
        assert validate_space(s).passed
        with pytest.raises(PreconditionError):
            discrete_space([], SUP_MIN)

    @pytest.mark.parametrize("tf", [SUP_MIN, SUP_PRODUCT, sup_triangle(TNorm.LUKASIEWICZ)], ids=str)
    def test_three_point_menger_lift(self, tf):
        s = menger_from_classical("abc", {("a", "b"): 1, ("b", "c"): 1, ("a", "c"): 2}, tf)
        assert validate_space(s).passed

    @settings(max_examples=60, deadline=None)
    @given(rngs(), sup_triangles(), integers(1, 6))
    def test_random_spaces_are_valid(self, rng, tf, n):
        s = random_space(rng, [f"p{i}" for i in range(n)], tf)
        assert validate_space(s).passed


class TestClassical:
    def test_two_points(self):
        s = menger_from_classical(["0", "1"], {("0", "1"): 1}, SUP_MIN)
        assert s.distance("0", "1") == heaviside(1)
        assert s.distance("1", "0") == heaviside(1)

    def test_zero_distance_rejected(self):
        with pytest.raises(MetricError):
            menger_from_classical(["0", "1"], {("0", "1"): 0}, SUP_MIN)

    def test_triangle_failure_rejected_with_witness(self):
        with pytest.raises(MetricError) as info:
            menger_from_classical("abc", {("a", "b"): 1, ("b", "c"): 1, ("a", "c"): 5}, SUP_MIN)
        assert info.value.witness is not None

    def test_heaviside_sum_law_holds_for_every_triangle(self):
        for tf in [sup_triangle(T) for T in TNorm] + [infdual_triangle(T) for T in TNorm]:
            check_heaviside_sum(tf, [Q(0), Q(1, 2), Q(1), Q(3)])

    def test_shortest_path_metrics(self):
        rng = random.Random(7)
        points = list("abcde")
        assert validate_classical_metric(points, random_classical_metric(rng, points)).passed

    def test_simple_space(self):
        G = heaviside(1)
        s = simple_space("ab", {("a", "b"): 3}, G, SUP_MIN)
        assert s.distance("a", "b") == heaviside(3)
        assert simple_space("ab", {("a", "b"): 3}, HINF, SUP_MIN).distance("a", "b") == HINF
        with pytest.raises(PreconditionError):
            simple_space("ab", {("a", "b"): 3}, H0, SUP_MIN)


class TestScaling:
    def setup_method(self):
        self.space = menger_from_classical("abc", {("a", "b"): 1, ("b", "c"): "1/2", ("a", "c"): "3/2"},
                                           SUP_PRODUCT)

    def test_identity_scaling(self):
        assert scale_metric(self.space, 1) == dict(self.space.metric)

    def test_zero_scaling(self):
        assert set(scale_metric(self.space, 0).values()) == {H0}

    def test_doubling(self):
        assert scale_metric(self.space, 2)[("a", "b")] == heaviside(2)

    @pytest.mark.parametrize("k, m", [(2, 3), ("1/2", "2/3"), (0, 5)])
    def test_composition(self, k, m):
        once = ProbSpace(self.space.points, scale_metric(self.space, k), self.space.tf)
        assert scale_metric(once, m) == scale_metric(self.space, Q(k) * Q(m))

    def test_negative(self):
        with pytest.raises(PreconditionError):
            scale_metric(self.space, -1)


class TestGroups:
    def test_builders_are_valid(self, group):
        assert validate_space(group.space).passed
        assert validate_invariant_group(group).passed

    def test_singleton(self):
        g = singleton_group()
        assert g.points == ("e",)
        assert validate_invariant_group(g).passed

    def test_cyclic_word_metric(self):
        g = cyclic_group(4, SUP_MIN)
        assert g.space.distance("0", "2") == heaviside(2)
        assert g.space.distance("0", "3") == heaviside(1)
        assert g.inv("1") == "3"
        assert g.mul("3", "2") == "1"

    def test_broken_associativity(self, z3):
        table = dict(z3.op_table)
        table[("1", "1")] = "1"
        broken = ProbGroup(z3.space, table, z3.identity, z3.inverse)
        report = validate_invariant_group(broken)
        assert "associativity" in report.axioms_violated()
        assert len(report.first("associativity").witness) == 3

    def test_non_invariant_metric(self):
        points = ["0", "1", "2", "3"]
        d = {("0", "1"): 1, ("1", "2"): 1, ("2", "3"): 1, ("0", "3"): 1, ("0", "2"): 2, ("1", "3"): "3/2"}
        space = menger_from_classical(points, d, SUP_MIN)
        table = {(a, b): str((int(a) + int(b)) % 4) for a in points for b in points}
        g = ProbGroup.from_table(space, table)
        assert g.identity == "0"
        assert validate_space(space).passed
        report = validate_invariant_group(g)
        assert report.axioms_violated() == ("invariance",)
        assert report.first().witness == ("0", "2", "1")

    def test_table_without_identity(self, z3):
        constant = {pair: "0" for pair in z3.op_table}
        with pytest.raises(PreconditionError):
            ProbGroup.from_table(z3.space, constant)

    def test_missing_inverse_is_reported(self, z3):
        table = dict(z3.op_table)
        table[("1", "2")] = table[("2", "1")] = "1"
        g = ProbGroup.from_table(z3.space, table, "0")
        assert "inverse" in validate_invariant_group(g).axioms_violated()
        with pytest.raises(PreconditionError):
            g.inv("1")

    def test_non_generating_set(self):
        points = ["0", "1", "2", "3"]
        with pytest.raises(PreconditionError):
            word_metric_group(points, lambda a, b: str((int(a) + int(b)) % 4), ["2"], SUP_MIN)

    def test_relabelling_preserves_validity(self, group):
        mapping = {p: f"g{i}" for i, p in enumerate(group.points)}
        copy = relabel_group(group, mapping)
        assert copy.identity == mapping[group.identity]
        assert validate_invariant_group(copy).passed
        with pytest.raises(PreconditionError):
            relabel_group(group, {group.points[0]: "only"})
