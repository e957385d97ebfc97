"""
Surface operations

分解グラフの検証、標準分解、曲面・分解の貼り合わせと局所変形（flip・円筒挿入）
"""

import logging
from collections import Counter
from collections.abc import Sequence

import networkx as nx
import numpy as np

from blocks.errors import (
    DuplicateMatch,
    EdgeNotBetweenTwoPants,
    IndexOutOfRange,
    OrientationMismatch,
)
from blocks.fusion_core.models import ValidationIssue
from blocks.surface_model.models import (
    Atom,
    AtomKind,
    BoundaryCircle,
    Component,
    DecompositionGraph,
    Edge,
    LegRef,
    Orientation,
    Surface,
)

logger = logging.getLogger(__name__)

Matching = Sequence[tuple[int, int]]


# 検証


def validate_structure(d: DecompositionGraph) -> list[ValidationIssue]:
    """
    曲面を参照せずに検査できる分解グラフ自身の整合性

    部品の脚数、半辺の参照と使用回数、内部辺の符号を調べる。
    """
    report: list[ValidationIssue] = []

    for index, atom in enumerate(d.atoms):
        if atom.legs != atom.kind.leg_count:
            report.append(
                ValidationIssue(
                    "atom-legs", (index,), f"{atom.kind.value} atom {index} has {atom.legs} legs"
                )
            )
        if any(sign not in (1, -1) for sign in atom.signs):
            report.append(ValidationIssue("atom-signs", (index,), f"atom {index} has a sign outside ±1"))

    valid = set(d.half_edges())
    refs = [ref for edge in d.internal_edges for ref in edge] + list(d.external_legs)
    dangling = [ref for ref in refs if ref not in valid]
    for ref in dangling:
        report.append(ValidationIssue("leg-ref", tuple(ref), f"leg {ref} does not exist"))
    if dangling:
        return report

    usage = Counter(refs)
    for ref in sorted(valid):
        if usage[ref] != 1:
            report.append(
                ValidationIssue(
                    "half-edge-coverage", tuple(ref), f"leg {ref} used {usage[ref]} times, expected once"
                )
            )

    for index, (u, v) in enumerate(d.internal_edges):
        if u == v:
            report.append(ValidationIssue("edge-distinct", (index,), f"edge {index} joins {u} to itself"))
        elif d.sign(u) == d.sign(v):
            report.append(
                ValidationIssue(
                    "edge-orientation",
                    (index,),
                    f"edge {index} joins {u} and {v} with the same sign {d.sign(u):+d}",
                )
            )
    return report


def validate_decomposition(d: DecompositionGraph, s: Surface) -> list[ValidationIssue]:
    """
    分解グラフが曲面 s の分解として整合しているか検査する

    Args:
        d: 分解グラフ
        s: 対象の曲面

    Returns:
        違反のリスト（空なら有効）
    """
    report = validate_structure(d)
    if any(issue.axiom in ("leg-ref", "atom-signs") for issue in report):
        return report

    if len(d.external_legs) != s.n_boundary:
        report.append(
            ValidationIssue(
                "external-count",
                (len(d.external_legs), s.n_boundary),
                f"{len(d.external_legs)} unmatched legs for {s.n_boundary} boundary circles",
            )
        )
    else:
        for position, (ref, circle) in enumerate(zip(d.external_legs, s.boundary, strict=True)):
            if d.sign(ref) != circle.orientation.sign:
                report.append(
                    ValidationIssue(
                        "external-orientation",
                        (position,),
                        f"leg {ref} has sign {d.sign(ref):+d} but circle {position} is {circle.orientation.value}",
                    )
                )

    if not d.atoms:
        if s.components:
            report.append(ValidationIssue("empty", (), "zero atoms decompose only the empty surface"))
        return report

    chi = sum(atom.kind.euler_characteristic for atom in d.atoms)
    if chi != s.euler_characteristic:
        report.append(
            ValidationIssue(
                "euler", (chi, s.euler_characteristic), f"atoms give χ = {chi}, surface has χ = {s.euler_characteristic}"
            )
        )

    report.extend(_check_components(d, s))
    return report


def _atom_graph(d: DecompositionGraph) -> nx.MultiGraph:
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(len(d.atoms)))
    for u, v in d.internal_edges:
        graph.add_edge(u.atom, v.atom)
    return graph


def infer_surface(d: DecompositionGraph) -> Surface:
    """
    構造的に正しい分解グラフから曲面の位相型を復元する

    成分は双対グラフの連結成分（最小の部品インデックス順）、種数は各成分の
    E - A + 1、境界の向きは外部脚の符号から決まる。
    """
    graph = _atom_graph(d)
    position_of = {ref: p for p, ref in enumerate(d.external_legs)}
    components = []
    for nodes in sorted(nx.connected_components(graph), key=min):
        sub = graph.subgraph(nodes)
        circles = sorted(p for ref, p in position_of.items() if ref.atom in nodes)
        components.append(
            Component(sub.number_of_edges() - sub.number_of_nodes() + 1, tuple(circles))
        )
    boundary = tuple(BoundaryCircle(Orientation.from_sign(d.sign(ref))) for ref in d.external_legs)
    return Surface(boundary=boundary, components=tuple(components))


def _check_components(d: DecompositionGraph, s: Surface) -> list[ValidationIssue]:
    graph = _atom_graph(d)
    circle_of = {ref.atom: [] for ref in d.external_legs}
    for position, ref in enumerate(d.external_legs):
        circle_of[ref.atom].append(position)

    found: list[tuple[frozenset[int], int]] = []
    for nodes in nx.connected_components(graph):
        sub = graph.subgraph(nodes)
        circles = frozenset(c for atom in nodes for c in circle_of.get(atom, []))
        # 種数 = 双対グラフの第1ベッチ数
        found.append((circles, sub.number_of_edges() - sub.number_of_nodes() + 1))

    expected = [(frozenset(c.circles), c.genus) for c in s.components]
    if Counter(c for c, _ in found) != Counter(c for c, _ in expected):
        issues = [
            ValidationIssue(
                "connectivity",
                (len(found), len(expected)),
                f"graph has {len(found)} components, surface has {len(expected)}",
            )
        ]
        total = sum(g for _, g in found)
        if total != s.genus:
            issues.append(ValidationIssue("genus", (total, s.genus), f"graph genus {total} != {s.genus}"))
        return issues

    if Counter(found) != Counter(expected):
        total = sum(g for _, g in found)
        return [
            ValidationIssue(
                "genus",
                (total, s.genus),
                f"component genera {sorted(g for _, g in found)} != {sorted(g for _, g in expected)}",
            )
        ]
    return []


# 標準分解


def canonical_decomposition(s: Surface) -> DecompositionGraph:
    """
    曲面の標準的な分解を作る

    (0,1) は円板、(0,2) は円筒、(0,0) は円筒で結んだ2枚の円板、(1,0) は自己接着した円筒、
    それ以外は 2g-2+n 個のパンツの鎖（g 回の自己接着を含む）。

    Args:
        s: 曲面

    Returns:
        s を分解する DecompositionGraph
    """
    atoms: list[Atom] = []
    edges: list[Edge] = []
    external: dict[int, LegRef] = {}

    for component in s.components:
        signs = [s.boundary[c].orientation.sign for c in component.circles]
        local_atoms, local_edges, local_external = _connected_decomposition(component.genus, signs)
        offset = len(atoms)
        atoms.extend(local_atoms)
        edges.extend((_shift(u, offset), _shift(v, offset)) for u, v in local_edges)
        for circle, ref in zip(component.circles, local_external, strict=True):
            external[circle] = _shift(ref, offset)

    d = DecompositionGraph(
        atoms=tuple(atoms),
        internal_edges=tuple(edges),
        external_legs=tuple(external[c] for c in range(s.n_boundary)),
    )
    logger.debug(f"Canonical decomposition of (g={s.genus}, n={s.n_boundary}): {len(atoms)} atoms")
    return d


def _shift(ref: LegRef, offset: int) -> LegRef:
    return LegRef(ref.atom + offset, ref.leg)


def _connected_decomposition(
    genus: int, signs: list[int]
) -> tuple[list[Atom], list[Edge], list[LegRef]]:
    n = len(signs)
    L = LegRef

    if (genus, n) == (0, 0):
        return (
            [Atom.disk(1), Atom.cylinder(-1, -1), Atom.disk(1)],
            [(L(0, 0), L(1, 0)), (L(1, 1), L(2, 0))],
            [],
        )
    if (genus, n) == (0, 1):
        return [Atom.disk(signs[0])], [], [L(0, 0)]
    if (genus, n) == (0, 2):
        return [Atom.cylinder(*signs)], [], [L(0, 0), L(0, 1)]
    if (genus, n) == (1, 0):
        return [Atom.cylinder(1, -1)], [(L(0, 0), L(0, 1))], []
    if (genus, n) == (1, 1):
        return [Atom.pants(1, -1, signs[0])], [(L(0, 0), L(0, 1))], [L(0, 2)]
    if (genus, n) == (2, 0):
        return (
            [Atom.pants(1, -1, 1), Atom.pants(1, -1, -1)],
            [(L(0, 0), L(0, 1)), (L(1, 0), L(1, 1)), (L(0, 2), L(1, 2))],
            [],
        )

    # 境界 n 本とハンドル g 個を鎖 C_1 … C_{m-2} の差し込み口に並べる
    m = n + genus
    chain = m - 2
    slots = [L(0, 0), L(0, 1), *(L(i, 1) for i in range(1, chain)), L(chain - 1, 2)]
    chain_signs = [[1, 1, 1] for _ in range(chain)]
    edges: list[Edge] = []
    for i in range(chain - 1):
        chain_signs[i + 1][0] = -1
        edges.append((L(i, 2), L(i + 1, 0)))

    external: list[LegRef] = []
    handles: list[Atom] = []
    for item, slot in enumerate(slots):
        if item < n:
            chain_signs[slot.atom][slot.leg] = signs[item]
            external.append(slot)
        else:
            handle = chain + len(handles)
            handles.append(Atom.pants(1, -1, -1))
            edges.append((L(handle, 0), L(handle, 1)))
            edges.append((slot, L(handle, 2)))

    atoms = [Atom(AtomKind.PANTS, tuple(sig)) for sig in chain_signs] + handles
    return atoms, edges, external


# 曲面の貼り合わせ


def disjoint_union(s1: Surface, s2: Surface) -> Surface:
    """非交和 s1 ⊔ s2（境界は s1 の後に s2）"""
    offset = s1.n_boundary
    shifted = tuple(
        Component(c.genus, tuple(i + offset for i in c.circles)) for c in s2.components
    )
    return Surface(boundary=s1.boundary + s2.boundary, components=s1.components + shifted)


def glue(s1: Surface, s2: Surface, matching: Matching) -> Surface:
    """
    s1 と s2 を円周に沿って貼り合わせる

    Args:
        s1: 1つ目の曲面
        s2: 2つ目の曲面
        matching: (s1 の境界インデックス, s2 の境界インデックス) の組

    Returns:
        貼り合わせた曲面（境界は s1 の残り、s2 の残りの順）

    Raises:
        IndexOutOfRange, DuplicateMatch, OrientationMismatch
    """
    _check_matching(
        matching, s1.n_boundary, s2.n_boundary, s1.orientations(), s2.orientations()
    )
    union = disjoint_union(s1, s2)
    return _glue_pairs(union, [(i, s1.n_boundary + j) for i, j in matching])


def self_glue(s: Surface, i: int, j: int) -> Surface:
    """
    同じ曲面の2つの境界円周を貼り合わせる

    i, j が同じ連結成分にあれば種数が1増え、境界は2本減る。
    """
    for index in (i, j):
        if not 0 <= index < s.n_boundary:
            raise IndexOutOfRange(f"boundary index {index} out of range (n={s.n_boundary})")
    if i == j:
        raise DuplicateMatch(f"cannot glue circle {i} to itself")
    orientations = s.orientations()
    if orientations[i] == orientations[j]:
        raise OrientationMismatch(
            f"circles {i} and {j} both have orientation {orientations[i].value}"
        )
    return _glue_pairs(s, [(i, j)])


def reverse_boundary(s: Surface, i: int) -> Surface:
    """境界円周 i の向きの印を反転する"""
    if not 0 <= i < s.n_boundary:
        raise IndexOutOfRange(f"boundary index {i} out of range (n={s.n_boundary})")
    circle = s.boundary[i]
    flipped = BoundaryCircle(circle.orientation.reversed(), circle.label)
    return Surface(boundary=s.boundary[:i] + (flipped,) + s.boundary[i + 1 :], components=s.components)


def _check_matching(
    matching: Matching,
    n1: int,
    n2: int,
    orientations1: Sequence[Orientation],
    orientations2: Sequence[Orientation],
) -> None:
    seen_left: set[int] = set()
    seen_right: set[int] = set()
    for i, j in matching:
        if not 0 <= i < n1:
            raise IndexOutOfRange(f"boundary index {i} out of range for first surface (n={n1})")
        if not 0 <= j < n2:
            raise IndexOutOfRange(f"boundary index {j} out of range for second surface (n={n2})")
        if i in seen_left or j in seen_right:
            raise DuplicateMatch(f"pair ({i}, {j}) reuses an already matched circle")
        seen_left.add(i)
        seen_right.add(j)
        if orientations1[i] == orientations2[j]:
            raise OrientationMismatch(
                f"circles {i} and {j} both have orientation {orientations1[i].value}"
            )


def _glue_pairs(s: Surface, pairs: Sequence[tuple[int, int]]) -> Surface:
    # 連結成分の union-find
    parent = list(range(len(s.components)))
    genus = [c.genus for c in s.components]

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in pairs:
        ci, cj = find(s.component_of(i)), find(s.component_of(j))
        if ci == cj:
            genus[ci] += 1
        else:
            root, child = min(ci, cj), max(ci, cj)
            parent[child] = root
            genus[root] += genus[child]

    glued = {c for pair in pairs for c in pair}
    survivors = [c for c in range(s.n_boundary) if c not in glued]
    renumber = {old: new for new, old in enumerate(survivors)}

    components: list[Component] = []
    for index in range(len(s.components)):
        if find(index) != index:
            continue
        circles = sorted(
            renumber[c]
            for member in range(len(s.components))
            if find(member) == index
            for c in s.components[member].circles
            if c in renumber
        )
        components.append(Component(genus[index], tuple(circles)))

    return Surface(boundary=tuple(s.boundary[c] for c in survivors), components=tuple(components))


# 分解の貼り合わせ


def disjoint_union_decompositions(d1: DecompositionGraph, d2: DecompositionGraph) -> DecompositionGraph:
    offset = len(d1.atoms)
    return DecompositionGraph(
        atoms=d1.atoms + d2.atoms,
        internal_edges=d1.internal_edges
        + tuple((_shift(u, offset), _shift(v, offset)) for u, v in d2.internal_edges),
        external_legs=d1.external_legs + tuple(_shift(ref, offset) for ref in d2.external_legs),
    )


def glue_decompositions(
    d1: DecompositionGraph, d2: DecompositionGraph, matching: Matching
) -> DecompositionGraph:
    """
    2つの分解を外部脚で貼り合わせる（マッチした脚は内部辺になる）

    Args:
        d1: 1つ目の分解
        d2: 2つ目の分解
        matching: (d1 の外部脚位置, d2 の外部脚位置) の組

    Returns:
        貼り合わせた曲面の分解
    """
    _check_matching(
        matching,
        len(d1.external_legs),
        len(d2.external_legs),
        [Orientation.from_sign(d1.sign(ref)) for ref in d1.external_legs],
        [Orientation.from_sign(d2.sign(ref)) for ref in d2.external_legs],
    )
    union = disjoint_union_decompositions(d1, d2)
    offset = len(d1.external_legs)
    return _glue_legs(union, [(i, offset + j) for i, j in matching])


def self_glue_decomposition(d: DecompositionGraph, i: int, j: int) -> DecompositionGraph:
    """分解の外部脚 i, j を内部辺にする"""
    n = len(d.external_legs)
    for index in (i, j):
        if not 0 <= index < n:
            raise IndexOutOfRange(f"external leg {index} out of range (n={n})")
    if i == j:
        raise DuplicateMatch(f"cannot glue leg {i} to itself")
    if d.sign(d.external_legs[i]) == d.sign(d.external_legs[j]):
        raise OrientationMismatch(f"external legs {i} and {j} have the same sign")
    return _glue_legs(d, [(i, j)])


def _glue_legs(d: DecompositionGraph, pairs: Sequence[tuple[int, int]]) -> DecompositionGraph:
    glued = {p for pair in pairs for p in pair}
    new_edges = tuple((d.external_legs[i], d.external_legs[j]) for i, j in pairs)
    return DecompositionGraph(
        atoms=d.atoms,
        internal_edges=d.internal_edges + new_edges,
        external_legs=tuple(ref for p, ref in enumerate(d.external_legs) if p not in glued),
    )


# 局所変形


def flippable_edges(d: DecompositionGraph) -> list[int]:
    """異なる2つのパンツを結ぶ内部辺のインデックス"""
    return [
        index
        for index, (u, v) in enumerate(d.internal_edges)
        if u.atom != v.atom
        and d.atoms[u.atom].kind is AtomKind.PANTS
        and d.atoms[v.atom].kind is AtomKind.PANTS
    ]


def flip(d: DecompositionGraph, edge: int) -> DecompositionGraph:
    """
    2つのパンツ (a,b,e | e,c,d) を (a,d,e′ | e′,b,c) に組み替える

    外部脚の位置と他の辺の接続は保たれる。

    Args:
        d: 分解グラフ
        edge: 内部辺のインデックス

    Returns:
        組み替え後の分解グラフ

    Raises:
        EdgeNotBetweenTwoPants: 辺が異なる2つのパンツを結んでいない
    """
    if not 0 <= edge < len(d.internal_edges):
        raise IndexOutOfRange(f"internal edge {edge} out of range")
    if edge not in flippable_edges(d):
        raise EdgeNotBetweenTwoPants(f"edge {edge} does not join two distinct pants")

    u, v = d.internal_edges[edge]
    p, q = u.atom, v.atom
    x1, x2 = (LegRef(p, leg) for leg in range(3) if leg != u.leg)
    y1, y2 = (LegRef(q, leg) for leg in range(3) if leg != v.leg)
    # p = (x1, y2, e′), q = (e′, x2, y1)
    remap = {
        x1: LegRef(p, 0),
        y2: LegRef(p, 1),
        u: LegRef(p, 2),
        v: LegRef(q, 0),
        x2: LegRef(q, 1),
        y1: LegRef(q, 2),
    }
    atoms = list(d.atoms)
    atoms[p] = Atom(AtomKind.PANTS, (d.sign(x1), d.sign(y2), d.sign(u)))
    atoms[q] = Atom(AtomKind.PANTS, (d.sign(v), d.sign(x2), d.sign(y1)))

    def move(ref: LegRef) -> LegRef:
        return remap.get(ref, ref)

    return DecompositionGraph(
        atoms=tuple(atoms),
        internal_edges=tuple((move(x), move(y)) for x, y in d.internal_edges),
        external_legs=tuple(move(ref) for ref in d.external_legs),
    )


def subdivide_edge(d: DecompositionGraph, edge: int) -> DecompositionGraph:
    """内部辺の途中に円筒を1つ挿入する"""
    if not 0 <= edge < len(d.internal_edges):
        raise IndexOutOfRange(f"internal edge {edge} out of range")
    u, v = d.internal_edges[edge]
    cylinder = len(d.atoms)
    atoms = d.atoms + (Atom.cylinder(d.sign(v), d.sign(u)),)
    edges = list(d.internal_edges)
    edges[edge] = (u, LegRef(cylinder, 0))
    edges.append((LegRef(cylinder, 1), v))
    return DecompositionGraph(atoms=atoms, internal_edges=tuple(edges), external_legs=d.external_legs)


def extend_leg(d: DecompositionGraph, position: int) -> DecompositionGraph:
    """外部脚の先に円筒を1つ継ぎ足す（境界円周の位置と向きは変わらない）"""
    if not 0 <= position < len(d.external_legs):
        raise IndexOutOfRange(f"external leg {position} out of range")
    ref = d.external_legs[position]
    sign = d.sign(ref)
    cylinder = len(d.atoms)
    atoms = d.atoms + (Atom.cylinder(-sign, sign),)
    external = list(d.external_legs)
    external[position] = LegRef(cylinder, 1)
    return DecompositionGraph(
        atoms=atoms,
        internal_edges=d.internal_edges + ((ref, LegRef(cylinder, 0)),),
        external_legs=tuple(external),
    )


def random_move(d: DecompositionGraph, rng: np.random.Generator) -> tuple[DecompositionGraph, str]:
    """
    flip・辺の細分・脚の延長から1つをランダムに適用する

    Args:
        d: 分解グラフ
        rng: 乱数生成器

    Returns:
        (変形後の分解, 変形の説明)
    """
    choices: list[str] = []
    flippable = flippable_edges(d)
    if flippable:
        choices.append("flip")
    if d.internal_edges:
        choices.append("subdivide")
    if d.external_legs:
        choices.append("extend")
    if not choices:
        return d, "noop"

    kind = choices[int(rng.integers(len(choices)))]
    if kind == "flip":
        edge = flippable[int(rng.integers(len(flippable)))]
        return flip(d, edge), f"flip:{edge}"
    if kind == "subdivide":
        edge = int(rng.integers(len(d.internal_edges)))
        return subdivide_edge(d, edge), f"subdivide:{edge}"
    position = int(rng.integers(len(d.external_legs)))
    return extend_leg(d, position), f"extend:{position}"
