"""
JSON 文書の読み書きのテスト
"""

import json

import pytest

from blocks.cli_io.documents import (
    parse_ring,
    parse_surface,
    render_json,
    serialize_ring,
    serialize_surface,
)
from blocks.errors import ParseError, ValidationError
from blocks.fusion_core.catalog import catalog
from blocks.fusion_core.models import FusionRing, ModularData
from blocks.surface_model.models import BoundaryCircle, Component, Orientation, Surface
from blocks.surface_model.operations import canonical_decomposition
from tests.conftest import FIXTURE_DIR

RING_FIXTURES = ["trivial", "ising", "fibonacci", "z2_boson"]
SURFACE_FIXTURES = ["genus2", "torus", "sphere4", "pants", "sphere5_chain"]


def ring_json(**overrides) -> str:
    document = {
        "name": "z2",
        "labels": ["1", "e"],
        "dual": ["1", "e"],
        "fusion": [
            {"a": "1", "b": "1", "c": "1", "n": 1},
            {"a": "1", "b": "e", "c": "e", "n": 1},
            {"a": "e", "b": "1", "c": "e", "n": 1},
            {"a": "e", "b": "e", "c": "1", "n": 1},
        ],
    }
    document.update(overrides)
    return json.dumps(document)


def issue_axioms(error: ValidationError) -> set[str]:
    return {issue.axiom for issue in error.report}


class TestFixtures:
    @pytest.mark.parametrize("name", RING_FIXTURES)
    def test_ring_round_trip(self, name):
        raw = (FIXTURE_DIR / f"{name}.json").read_bytes()
        assert serialize_ring(parse_ring(raw)) == raw

    @pytest.mark.parametrize("name", SURFACE_FIXTURES)
    def test_surface_round_trip(self, name):
        raw = (FIXTURE_DIR / f"{name}.json").read_bytes()
        assert serialize_surface(*parse_surface(raw)) == raw

    @pytest.mark.parametrize("name", ["trivial", "ising", "z2_boson"])
    def test_catalog_matches_fixture(self, name):
        assert serialize_ring(catalog(name)) == (FIXTURE_DIR / f"{name}.json").read_bytes()

    def test_chain_fixture_is_canonical(self):
        surface, d = parse_surface((FIXTURE_DIR / "sphere5_chain.json").read_bytes())
        assert d == canonical_decomposition(surface)

    def test_pants_fixture_labels(self):
        surface, d = parse_surface((FIXTURE_DIR / "pants.json").read_bytes())
        assert [c.label for c in surface.boundary] == ["sigma", "sigma", "psi"]
        assert surface.boundary[2].orientation is Orientation.REVERSED
        assert d is not None and d.atoms[0].signs == (1, 1, -1)


class TestRingDocuments:
    @pytest.mark.parametrize(
        "name", ["trivial", "ising", "fibonacci", "su2_1", "su2_3", "z_4", "z2_boson"]
    )
    def test_catalog_round_trip(self, name):
        data = catalog(name)
        assert parse_ring(serialize_ring(data)) == data

    def test_without_s_matrix(self):
        ring = parse_ring(ring_json())
        assert isinstance(ring, FusionRing)
        assert ring.rank == 2
        assert ring.n(1, 1, 0) == 1
        assert b"s_matrix" not in serialize_ring(ring)

    def test_with_s_matrix(self):
        h = 0.7071067811865476
        data = parse_ring(ring_json(s_matrix=[[h, 0.0], [h, 0.0], [h, 0.0], [-h, 0.0]]))
        assert isinstance(data, ModularData)
        assert data.s_matrix[1][1] == complex(-h, 0.0)

    def test_malformed_json_location(self):
        with pytest.raises(ParseError) as excinfo:
            parse_ring('{\n  "name": "x",\n  "labels": [\n}')
        assert excinfo.value.line == 4
        assert excinfo.value.column is not None

    def test_not_utf8(self):
        with pytest.raises(ParseError):
            parse_ring(b"\xff\xfe")

    @pytest.mark.parametrize(
        "overrides",
        [{"extra": 1}, {"labels": []}, {"labels": "1,e"}, {"fusion": [{"a": "1", "b": "1"}]}],
    )
    def test_schema_errors(self, overrides):
        with pytest.raises(ParseError):
            parse_ring(ring_json(**overrides))

    def test_s_matrix_shape(self):
        with pytest.raises(ParseError):
            parse_ring(ring_json(s_matrix=[[1.0, 0.0]]))

    def test_duplicate_labels(self):
        with pytest.raises(ValidationError) as excinfo:
            parse_ring(ring_json(labels=["1", "1"], dual=["1", "1"], fusion=[]))
        assert issue_axioms(excinfo.value) == {"labels-unique"}

    def test_dual_not_permutation(self):
        with pytest.raises(ValidationError) as excinfo:
            parse_ring(ring_json(dual=["1", "x"]))
        assert "dual-permutation" in issue_axioms(excinfo.value)

    def test_unknown_label(self):
        fusion = [{"a": "1", "b": "1", "c": "x", "n": 1}]
        with pytest.raises(ValidationError) as excinfo:
            parse_ring(ring_json(fusion=fusion))
        assert issue_axioms(excinfo.value) == {"unknown-label"}

    def test_duplicate_record(self):
        record = {"a": "1", "b": "1", "c": "1", "n": 1}
        with pytest.raises(ValidationError) as excinfo:
            parse_ring(ring_json(fusion=[record, record]))
        assert issue_axioms(excinfo.value) == {"duplicate-record"}

    def test_duplicate_after_zero_record(self):
        fusion = json.loads(ring_json())["fusion"]
        zero = {"a": "e", "b": "e", "c": "1", "n": 0}
        with pytest.raises(ValidationError) as excinfo:
            parse_ring(ring_json(fusion=[zero, *fusion]))
        assert issue_axioms(excinfo.value) == {"duplicate-record"}

    def test_axioms_checked(self):
        with pytest.raises(ValidationError) as excinfo:
            parse_ring(ring_json(fusion=[]))
        assert excinfo.value.report


class TestSurfaceDocuments:
    def test_connected_by_default(self):
        surface, d = parse_surface('{"genus": 2, "boundary": [{"orientation": "-"}]}')
        assert surface == Surface.connected(2, ["-"])
        assert d is None

    def test_empty_surface(self):
        surface, _ = parse_surface('{"genus": 0, "components": []}')
        assert surface == Surface.empty()
        assert serialize_surface(surface) == render_json(
            {"genus": 0, "boundary": [], "components": []}
        ).encode("utf-8")

    def test_disconnected_round_trip(self):
        surface = Surface(
            boundary=(
                BoundaryCircle(Orientation.INDUCED, "x"),
                BoundaryCircle(Orientation.REVERSED),
                BoundaryCircle(),
            ),
            components=(Component(1, (0,)), Component(0, (1, 2))),
        )
        d = canonical_decomposition(surface)
        raw = serialize_surface(surface, d)
        assert parse_surface(raw) == (surface, d)
        assert b'"components"' in raw

    def test_components_must_partition(self):
        raw = json.dumps(
            {
                "genus": 0,
                "boundary": [{"orientation": "+"}, {"orientation": "+"}],
                "components": [{"genus": 0, "circles": [0, 0]}],
            }
        )
        with pytest.raises(ValidationError) as excinfo:
            parse_surface(raw)
        assert issue_axioms(excinfo.value) == {"components-partition"}

    def test_components_genus(self):
        raw = json.dumps({"genus": 3, "components": [{"genus": 1}, {"genus": 1}]})
        with pytest.raises(ValidationError) as excinfo:
            parse_surface(raw)
        assert issue_axioms(excinfo.value) == {"components-genus"}

    def test_decomposition_checked(self):
        raw = json.dumps(
            {
                "genus": 0,
                "boundary": [{"orientation": "+"}] * 3,
                "decomposition": {
                    "atoms": [{"kind": "pants", "legs": [{"sign": 1}, {"sign": 1}, {"sign": -1}]}],
                    "external": ["0.0", "0.1", "0.2"],
                },
            }
        )
        with pytest.raises(ValidationError) as excinfo:
            parse_surface(raw)
        assert "external-orientation" in issue_axioms(excinfo.value)

    @pytest.mark.parametrize(
        "decomposition",
        [
            {"atoms": [{"kind": "hexagon", "legs": []}]},
            {"atoms": [{"kind": "disk", "legs": [{"sign": 2}]}]},
            {"atoms": [{"kind": "disk", "legs": [{"sign": 1}]}], "external": ["0-0"]},
        ],
    )
    def test_decomposition_schema(self, decomposition):
        raw = json.dumps(
            {"genus": 0, "boundary": [{"orientation": "+"}], "decomposition": decomposition}
        )
        with pytest.raises(ParseError):
            parse_surface(raw)

    def test_negative_genus(self):
        with pytest.raises(ParseError):
            parse_surface('{"genus": -1}')


class TestRenderJson:
    def test_layout(self):
        text = render_json({"a": [1, 2], "b": [{"x": 1, "y": [2]}], "c": {}, "d": []})
        assert text == (
            "{\n"
            '  "a": [1, 2],\n'
            '  "b": [\n'
            '    {"x": 1, "y": [2]}\n'
            "  ],\n"
            '  "c": {},\n'
            '  "d": []\n'
            "}\n"
        )

    def test_nested_objects_indent(self):
        assert render_json({"a": {"b": True}}) == '{\n  "a": {\n    "b": true\n  }\n}\n'

    def test_floats_use_shortest_repr(self):
        assert render_json([0.1, 1e-20, None]) == "[0.1, 1e-20, null]\n"
