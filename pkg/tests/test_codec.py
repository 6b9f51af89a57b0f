import json
import math
from fractions import Fraction as Q

import pytest

from pmskit.codec import (decode_distfn, encode_distfn, encode_iso, encode_lipmap, encode_space, load_distfn,
                          load_group, load_iso, load_map, load_phi, load_space, parse_map_values,
                          parse_phi_document, parse_rational, parse_space_document, parse_space_file)
from pmskit.distributions import H0, HINF, DistFn, heaviside
from pmskit.errors import AxiomError, PreconditionError, SchemaError
from pmskit.lipschitz import delta_embed, dist_to_set
from pmskit.monoid import IsoWitness
from pmskit.spaces import ProbGroup, cyclic_group
from pmskit.tnorms import TNorm, sup_triangle

LINE = {
    "points": ["a", "b", "c"],
    "tf": "sup:min",
    "metric": {"a|b": {"heaviside": 1}, "b|c": [[1, 1]], "a|c": {"heaviside": "2"}},
}


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


class TestRationals:
    @pytest.mark.parametrize("value, expected", [(3, Q(3)), ("3/4", Q(3, 4)), (" 3 / 4 ", Q(3, 4)), ("-2", Q(-2))])
    def test_accepted(self, value, expected):
        assert parse_rational(value) == expected

    @pytest.mark.parametrize("value", [1.5, True, "1.5", "1/0", "three", None, "inf"])
    def test_rejected(self, value):
        with pytest.raises(SchemaError):
            parse_rational(value, field="x")

    def test_infinity_when_allowed(self):
        assert parse_rational("inf", allow_inf=True) == math.inf


class TestDistFnCodec:
    def test_pairs(self):
        assert decode_distfn([["0", "1/2"], [2, 1]]) == DistFn.of([(0, "1/2"), (2, 1)])
        assert decode_distfn([]) == HINF

    def test_heaviside_shorthand(self):
        assert decode_distfn({"heaviside": 2}) == heaviside(2)
        assert decode_distfn({"heaviside": "inf"}) == HINF

    def test_encoding_uses_strings(self):
        assert encode_distfn(DistFn.of([(0, "1/2"), (2, 1)])) == [["0", "1/2"], ["2", "1"]]

    @pytest.mark.parametrize("doc, field", [
        ({"jumps": []}, "dist"),
        ([[1]], "dist[0]"),
        ([[0, "1/2"], [1, "1/4"]], "dist"),
        ([[0, 0.5]], "dist[0][1]"),
        ({"heaviside": "-1"}, "dist.heaviside"),
    ])
    def test_malformed(self, doc, field):
        with pytest.raises(SchemaError) as info:
            decode_distfn(doc)
        assert info.value.field == field

    def test_load_inline_and_file(self, tmp_path):
        assert load_distfn('[["1", "1/2"]]') == DistFn.of([(1, "1/2")])
        path = write(tmp_path, "F.json", {"dist": {"heaviside": "1/3"}})
        assert load_distfn(str(path)) == heaviside("1/3")
        with pytest.raises(SchemaError):
            load_distfn("not json")


class TestSpaceCodec:
    def test_line(self):
        s = parse_space_document(LINE)
        assert s.points == ("a", "b", "c")
        assert s.distance("b", "a") == heaviside(1)
        assert s.distance("c", "b") == heaviside(1)
        assert s.distance("a", "a") == H0
        assert s.tf == sup_triangle(TNorm.MINIMUM)

    def test_axiom_failure(self):
        doc = dict(LINE, metric={"a|b": {"heaviside": 1}, "b|c": {"heaviside": 1}, "a|c": {"heaviside": 5}})
        with pytest.raises(AxiomError) as info:
            parse_space_document(doc, "line.json")
        assert info.value.report.first("triangle").witness == ("a", "b", "c")
        assert parse_space_document(doc, validate=False).distance("a", "c") == heaviside(5)

    def test_infdual_space_refuses_dist_to_set(self):
        s = parse_space_document(dict(LINE, tf="infdual:min"))
        with pytest.raises(PreconditionError):
            dist_to_set(s, ["a"])

    @pytest.mark.parametrize("change, field", [
        ({"tf": "sup"}, "tf"),
        ({"tf": 3}, "tf"),
        ({"points": []}, "points"),
        ({"points": ["a", "a"]}, "points"),
        ({"metric": {"a-b": []}}, "metric.a-b"),
        ({"metric": {"a|b": [], "b|z": []}}, "metric"),
        ({"metric": {"a|b": []}}, "metric"),
    ])
    def test_schema_errors(self, change, field):
        with pytest.raises(SchemaError) as info:
            parse_space_document(dict(LINE, **change))
        assert info.value.field == field

    def test_missing_field(self):
        doc = {k: v for k, v in LINE.items() if k != "metric"}
        with pytest.raises(SchemaError) as info:
            parse_space_document(doc)
        assert info.value.field == "metric"

    def test_json_syntax_error_location(self):
        with pytest.raises(SchemaError) as info:
            parse_space_file('{"points": ["a"],\n "tf": }', "bad.json")
        assert info.value.line == 2
        assert str(info.value).startswith("bad.json:2:")

    def test_yaml(self):
        text = "points: [a, b]\ntf: sup:product\nmetric:\n  a|b: {heaviside: 1}\n"
        s = parse_space_file(text, "s.yaml", fmt="yaml")
        assert s.distance("a", "b") == heaviside(1)
        with pytest.raises(SchemaError) as info:
            parse_space_file("points: [a\ntf: x\n", "s.yaml", fmt="yaml")
        assert info.value.line is not None

    def test_group_round_trip(self, group):
        parsed = parse_space_document(json.loads(json.dumps(encode_space(group))))
        assert isinstance(parsed, ProbGroup)
        assert parsed == group

    def test_group_with_broken_table(self, z3):
        doc = encode_space(z3)
        doc["group"]["table"][1][1] = "1"
        with pytest.raises(AxiomError) as info:
            parse_space_document(doc)
        assert "associativity" in info.value.report.axioms_violated()

    def test_group_table_shape(self, z3):
        doc = encode_space(z3)
        doc["group"]["table"] = doc["group"]["table"][:2]
        with pytest.raises(SchemaError):
            parse_space_document(doc)

    def test_files(self, tmp_path, z3):
        path = write(tmp_path, "line.json", LINE)
        assert load_space(path).points == ("a", "b", "c")
        with pytest.raises(SchemaError):
            load_group(path)
        assert load_group(write(tmp_path, "z3.json", encode_space(z3))) == z3
        yaml_path = tmp_path / "line.yaml"
        yaml_path.write_text("points: [a, b]\ntf: sup:min\nmetric:\n  a|b: [[0, 1/2], [1, 1]]\n")
        assert load_space(yaml_path).distance("a", "b") == DistFn.of([(0, "1/2"), (1, 1)])
        with pytest.raises(SchemaError):
            load_space(tmp_path / "missing.json")


class TestMapCodec:
    def test_relative_space_reference(self, tmp_path):
        write(tmp_path, "line.json", LINE)
        path = write(tmp_path, "f.json", {"space": "line.json", "values": {"a": {"heaviside": 0}}})
        space, values = load_map(path)
        assert space.points == ("a", "b", "c")
        assert values == {"a": H0}

    def test_inline_space(self, tmp_path):
        path = write(tmp_path, "f.json", {"space": LINE, "values": {"b": []}})
        space, values = load_map(path)
        assert values == {"b": HINF}

    def test_needs_a_space(self, tmp_path):
        with pytest.raises(SchemaError):
            load_map(write(tmp_path, "f.json", {"values": {}}))

    def test_unknown_point(self):
        s = parse_space_document(LINE)
        with pytest.raises(SchemaError) as info:
            parse_map_values({"values": {"z": []}}, s)
        assert info.value.field == "values.z"

    def test_encode(self):
        s = parse_space_document(LINE)
        assert encode_lipmap(delta_embed(s, "a"))["values"]["c"] == [["2", "1"]]


class TestIsoCodec:
    def test_iso_file(self, tmp_path):
        path = write(tmp_path, "iso.json", {"forward": {"0": "x1", "1": "x0"}})
        iso = load_iso(path)
        assert iso.backward == {"x1": "0", "x0": "1"}
        assert encode_iso(iso) == {"forward": {"0": "x1", "1": "x0"}}

    def test_phi_file(self, tmp_path, z3):
        images = {a: encode_lipmap(delta_embed(z3.space, a))["values"] for a in z3.points}
        phi = load_phi(write(tmp_path, "phi.json", {"images": images}), z3, z3)
        assert phi(delta_embed(z3.space, "2")) == delta_embed(z3.space, "2")

    def test_phi_missing_image(self, z3):
        images = {"0": encode_lipmap(delta_embed(z3.space, "0"))["values"]}
        with pytest.raises(SchemaError):
            parse_phi_document({"images": images}, z3, z3)

    def test_phi_partial_image(self, z3):
        images = {a: {"0": []} for a in z3.points}
        with pytest.raises(SchemaError):
            parse_phi_document({"images": images}, z3, z3)

    def test_identity_witness_encodes(self):
        g = cyclic_group(2)
        assert encode_iso(IsoWitness.identity(g)) == {"forward": {"0": "0", "1": "1"}}
