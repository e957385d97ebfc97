"""
Documents

融合環・曲面の JSON 文書（pydantic スキーマ）と決定的なレンダリング
"""

import json
import logging
from typing import Annotated, Any, Literal

from pydantic import BaseModel, ConfigDict, Field, StringConstraints
from pydantic import ValidationError as SchemaError

from blocks.errors import ParseError, ValidationError
from blocks.fusion_core.models import FusionRing, ModularData, ValidationIssue
from blocks.fusion_core.operations import validate_modular_data, validate_ring
from blocks.surface_model.models import (
    Atom,
    AtomKind,
    BoundaryCircle,
    Component,
    DecompositionGraph,
    LegRef,
    Orientation,
    Surface,
)
from blocks.surface_model.operations import validate_decomposition

logger = logging.getLogger(__name__)

LegText = Annotated[str, StringConstraints(pattern=r"^\d+\.\d+$")]


class _Document(BaseModel):
    model_config = ConfigDict(extra="forbid")


class FusionRecord(_Document):
    """N_{ab}^c = n（ラベルは名前で指定）"""

    a: str
    b: str
    c: str
    n: int


class RingDocument(_Document):
    name: str
    labels: list[str] = Field(min_length=1)
    dual: list[str]
    fusion: list[FusionRecord] = Field(default_factory=list)
    # 行優先の [re, im] の並び
    s_matrix: list[tuple[float, float]] | None = None


class BoundaryDocument(_Document):
    orientation: Literal["+", "-"] = "+"
    label: str | None = None


class ComponentDocument(_Document):
    genus: int = Field(ge=0)
    circles: list[int] = Field(default_factory=list)


class LegDocument(_Document):
    sign: Literal[1, -1]


class AtomDocument(_Document):
    kind: AtomKind
    legs: list[LegDocument]


class DecompositionDocument(_Document):
    atoms: list[AtomDocument]
    internal_edges: list[tuple[LegText, LegText]] = Field(default_factory=list)
    external: list[LegText] = Field(default_factory=list)


class SurfaceDocument(_Document):
    genus: int = Field(ge=0)
    boundary: list[BoundaryDocument] = Field(default_factory=list)
    components: list[ComponentDocument] | None = None
    decomposition: DecompositionDocument | None = None


# レンダリング


def render_json(value: Any) -> str:
    """
    決定的な JSON 文字列を作る

    オブジェクトは2スペースでインデントし、スカラーのリストは1行、
    オブジェクトやリストのリストは1要素1行にする。末尾に改行を付ける。
    """
    return _render(value, 0) + "\n"


def _render(value: Any, depth: int) -> str:
    pad = "  " * (depth + 1)
    close = "  " * depth
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(key)}: {_render(item, depth + 1)}" for key, item in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(value, list | tuple):
        if not value:
            return "[]"
        if all(not isinstance(item, dict | list | tuple) for item in value):
            return json.dumps(list(value))
        items = [pad + json.dumps(item, separators=(", ", ": ")) for item in value]
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    return json.dumps(value)


def _load(raw: bytes | str, model: type[_Document]) -> Any:
    try:
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
    except UnicodeDecodeError as e:
        raise ParseError(f"document is not UTF-8: {e.reason}") from e
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed JSON: {e.msg}", line=e.lineno, column=e.colno) from e
    try:
        return model.model_validate(payload)
    except SchemaError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise ParseError(f"{model.__name__} schema error at {location}: {first['msg']}") from e


# 融合環


def parse_ring(raw: bytes | str) -> FusionRing | ModularData:
    """
    RingDocument を読み込む

    Args:
        raw: JSON 文書

    Returns:
        s_matrix があれば ModularData、なければ FusionRing

    Raises:
        ParseError: JSON・スキーマの誤り、S 行列の形の誤り
        ValidationError: 双対が置換でない、融合環の公理を満たさない
    """
    doc: RingDocument = _load(raw, RingDocument)
    rank = len(doc.labels)
    if doc.s_matrix is not None and len(doc.s_matrix) != rank * rank:
        raise ParseError(f"s_matrix has {len(doc.s_matrix)} entries, expected {rank * rank}")

    issues: list[ValidationIssue] = []
    if len(set(doc.labels)) != rank:
        issues.append(ValidationIssue("labels-unique", (), "label names must be distinct"))
    index = {name: i for i, name in enumerate(doc.labels)}
    if sorted(doc.dual) != sorted(doc.labels):
        issues.append(ValidationIssue("dual-permutation", (), "dual must be a permutation of the labels"))
    unknown = sorted({x for r in doc.fusion for x in (r.a, r.b, r.c)} - index.keys())
    if unknown:
        issues.append(ValidationIssue("unknown-label", (), f"fusion records name unknown labels {unknown}"))
    if issues:
        raise ValidationError(f"ring document {doc.name} is inconsistent", issues)

    tensor = [[[0] * rank for _ in range(rank)] for _ in range(rank)]
    seen: set[tuple[int, int, int]] = set()
    for record in doc.fusion:
        a, b, c = index[record.a], index[record.b], index[record.c]
        if (a, b, c) in seen:
            raise ValidationError(
                f"ring document {doc.name} is inconsistent",
                [ValidationIssue("duplicate-record", (a, b, c), f"N[{a},{b}]^{c} given twice")],
            )
        seen.add((a, b, c))
        tensor[a][b][c] = record.n

    ring = FusionRing(
        name=doc.name,
        labels=tuple(doc.labels),
        dual=tuple(index[name] for name in doc.dual),
        n_tensor=tuple(tuple(tuple(row) for row in plane) for plane in tensor),
    )
    if doc.s_matrix is None:
        report = validate_ring(ring)
        result: FusionRing | ModularData = ring
    else:
        entries = [complex(re, im) for re, im in doc.s_matrix]
        rows = tuple(tuple(entries[r * rank : (r + 1) * rank]) for r in range(rank))
        result = ModularData(ring=ring, s_matrix=rows)
        # ユニタリ性はモジュラリティ判定の対象なのでここでは要求しない
        report = validate_modular_data(result, require_unitary=False)
    if report:
        raise ValidationError(f"ring {doc.name} fails {len(report)} checks", report)
    logger.debug(f"Parsed ring {doc.name} with {rank} labels")
    return result


def ring_payload(data: FusionRing | ModularData) -> dict[str, Any]:
    ring = data.ring if isinstance(data, ModularData) else data
    payload: dict[str, Any] = {
        "name": ring.name,
        "labels": list(ring.labels),
        "dual": [ring.labels[ring.bar(a)] for a in range(ring.rank)],
        "fusion": [
            {"a": ring.labels[a], "b": ring.labels[b], "c": ring.labels[c], "n": ring.n(a, b, c)}
            for a in range(ring.rank)
            for b in range(ring.rank)
            for c in range(ring.rank)
            if ring.n(a, b, c)
        ],
    }
    if isinstance(data, ModularData):
        payload["s_matrix"] = [[x.real, x.imag] for row in data.s_matrix for x in row]
    return payload


def serialize_ring(data: FusionRing | ModularData) -> bytes:
    """RingDocument を決定的な UTF-8 JSON にする"""
    return render_json(ring_payload(data)).encode("utf-8")


# 曲面


def _leg(text: str) -> LegRef:
    atom, leg = text.split(".")
    return LegRef(int(atom), int(leg))


def parse_surface(raw: bytes | str) -> tuple[Surface, DecompositionGraph | None]:
    """
    SurfaceDocument を読み込む

    components を省略すると連結曲面、[] なら空の曲面。

    Args:
        raw: JSON 文書

    Returns:
        (曲面, 分解グラフまたは None)

    Raises:
        ParseError: JSON・スキーマの誤り
        ValidationError: 成分・分解が曲面と整合しない
    """
    doc: SurfaceDocument = _load(raw, SurfaceDocument)
    boundary = tuple(
        BoundaryCircle(Orientation(circle.orientation), circle.label) for circle in doc.boundary
    )

    if doc.components is None:
        surface = Surface.connected(doc.genus, boundary)
    else:
        surface = Surface(
            boundary=boundary,
            components=tuple(Component(c.genus, tuple(c.circles)) for c in doc.components),
        )
        issues = _component_issues(surface, doc.genus)
        if issues:
            raise ValidationError("surface components are inconsistent", issues)

    if doc.decomposition is None:
        return surface, None

    d = DecompositionGraph(
        atoms=tuple(
            Atom(atom.kind, tuple(leg.sign for leg in atom.legs)) for atom in doc.decomposition.atoms
        ),
        internal_edges=tuple((_leg(u), _leg(v)) for u, v in doc.decomposition.internal_edges),
        external_legs=tuple(_leg(ref) for ref in doc.decomposition.external),
    )
    report = validate_decomposition(d, surface)
    if report:
        raise ValidationError(f"decomposition fails {len(report)} checks", report)
    return surface, d


def _component_issues(surface: Surface, genus: int) -> list[ValidationIssue]:
    issues = []
    circles = sorted(c for component in surface.components for c in component.circles)
    if circles != list(range(surface.n_boundary)):
        issues.append(
            ValidationIssue("components-partition", (), "components must partition the boundary circles")
        )
    if surface.genus != genus:
        issues.append(
            ValidationIssue("components-genus", (genus, surface.genus), f"genus {genus} != component sum {surface.genus}")
        )
    return issues


def surface_payload(surface: Surface, d: DecompositionGraph | None = None) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "genus": surface.genus,
        "boundary": [
            {"orientation": c.orientation.value}
            | ({"label": c.label} if c.label is not None else {})
            for c in surface.boundary
        ],
    }
    connected = (Component(surface.genus, tuple(range(surface.n_boundary))),)
    if surface.components != connected:
        payload["components"] = [
            {"genus": c.genus, "circles": list(c.circles)} for c in surface.components
        ]
    if d is not None:
        payload["decomposition"] = {
            "atoms": [
                {"kind": atom.kind.value, "legs": [{"sign": sign} for sign in atom.signs]}
                for atom in d.atoms
            ],
            "internal_edges": [[str(u), str(v)] for u, v in d.internal_edges],
            "external": [str(ref) for ref in d.external_legs],
        }
    return payload


def serialize_surface(surface: Surface, d: DecompositionGraph | None = None) -> bytes:
    """SurfaceDocument を決定的な UTF-8 JSON にする"""
    return render_json(surface_payload(surface, d)).encode("utf-8")
