"""
曲面と分解グラフのテスト
"""

import numpy as np
import pytest

from blocks.errors import (
    DuplicateMatch,
    EdgeNotBetweenTwoPants,
    IndexOutOfRange,
    OrientationMismatch,
)
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
from blocks.surface_model.operations import (
    canonical_decomposition,
    disjoint_union,
    disjoint_union_decompositions,
    extend_leg,
    flip,
    flippable_edges,
    glue,
    glue_decompositions,
    infer_surface,
    random_move,
    reverse_boundary,
    self_glue,
    self_glue_decomposition,
    subdivide_edge,
    validate_decomposition,
)
from tests.helpers import random_surface, sphere


def axioms(d: DecompositionGraph, s: Surface) -> set[str]:
    return {issue.axiom for issue in validate_decomposition(d, s)}


class TestSurface:
    def test_connected(self):
        s = Surface.connected(2, ["+", "-"])
        assert s.genus == 2
        assert s.n_boundary == 2
        assert s.euler_characteristic == -4
        assert s.is_connected
        assert s.orientations() == (Orientation.INDUCED, Orientation.REVERSED)

    def test_empty(self):
        s = Surface.empty()
        assert s.euler_characteristic == 0
        assert not s.is_connected
        assert s.is_closed

    def test_boundary_circle_accepted(self):
        s = Surface.connected(0, [BoundaryCircle(Orientation.REVERSED, "x")])
        assert s.boundary[0].label == "x"

    def test_atom_euler_characteristics(self):
        assert AtomKind.PANTS.euler_characteristic == -1
        assert AtomKind.CYLINDER.euler_characteristic == 0
        assert AtomKind.DISK.euler_characteristic == 1

    def test_leg_ref_text(self):
        assert str(LegRef(3, 1)) == "3.1"


class TestGlue:
    def test_single_circle(self):
        glued = glue(sphere("+", "+", "+"), sphere("-", "+", "+"), [(2, 0)])
        assert glued.genus == 0
        assert glued.n_boundary == 4
        assert glued.is_connected

    def test_genus_formula(self):
        s1 = Surface.connected(1, ["+", "+", "+"])
        s2 = Surface.connected(2, ["-", "-", "+"])
        glued = glue(s1, s2, [(0, 0), (1, 1)])
        # g₁ + g₂ + k - 1
        assert glued.genus == 1 + 2 + 2 - 1
        assert glued.orientations() == (Orientation.INDUCED, Orientation.INDUCED)

    def test_boundary_order(self):
        s1 = Surface.connected(0, [BoundaryCircle(label="a"), BoundaryCircle(label="b")])
        s2 = Surface.connected(
            0, [BoundaryCircle(Orientation.REVERSED, "c"), BoundaryCircle(label="d")]
        )
        glued = glue(s1, s2, [(0, 0)])
        assert [c.label for c in glued.boundary] == ["b", "d"]

    def test_orientation_mismatch(self):
        with pytest.raises(OrientationMismatch):
            glue(sphere("+", "+", "+"), sphere("+", "+", "+"), [(0, 0)])

    def test_index_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            glue(sphere("+", "+", "+"), sphere("-", "+", "+"), [(3, 0)])

    def test_duplicate_match(self):
        with pytest.raises(DuplicateMatch):
            glue(sphere("+", "+", "+"), sphere("-", "-", "+"), [(0, 0), (0, 1)])

    def test_self_glue_raises_genus(self):
        glued = self_glue(sphere("+", "-", "+"), 0, 1)
        assert glued.genus == 1
        assert glued.n_boundary == 1

    def test_self_glue_errors(self):
        with pytest.raises(OrientationMismatch):
            self_glue(sphere("+", "+"), 0, 1)
        with pytest.raises(IndexOutOfRange):
            self_glue(sphere("+", "-"), 0, 2)
        with pytest.raises(DuplicateMatch):
            self_glue(sphere("+", "-"), 1, 1)

    def test_disjoint_union_then_self_glue_connects(self):
        union = disjoint_union(sphere("+", "+"), sphere("-", "+"))
        assert len(union.components) == 2
        assert union.components[1] == Component(0, (2, 3))
        glued = self_glue(union, 1, 2)
        assert glued.is_connected
        assert glued.genus == 0

    def test_closing_up_leaves_closed_component(self):
        union = disjoint_union(sphere("+"), sphere("+", "-"))
        glued = self_glue(union, 1, 2)
        assert glued.components == (Component(0, (0,)), Component(1, ()))

    def test_reverse_boundary(self):
        s = reverse_boundary(sphere("+", "+"), 1)
        assert s.orientations() == (Orientation.INDUCED, Orientation.REVERSED)
        with pytest.raises(IndexOutOfRange):
            reverse_boundary(s, 2)


class TestCanonicalDecomposition:
    @pytest.mark.parametrize("genus", range(4))
    @pytest.mark.parametrize("n", range(5))
    def test_validates(self, genus, n):
        rng = np.random.default_rng(genus * 10 + n)
        s = Surface.connected(genus, ["+" if rng.random() < 0.5 else "-" for _ in range(n)])
        d = canonical_decomposition(s)
        assert validate_decomposition(d, s) == []

    @pytest.mark.parametrize(
        ("genus", "n", "pants"), [(0, 3, 1), (1, 1, 1), (2, 0, 2), (0, 5, 3), (2, 3, 5), (3, 0, 4)]
    )
    def test_pants_count(self, genus, n, pants):
        d = canonical_decomposition(Surface.connected(genus, ["+"] * n))
        assert [atom.kind for atom in d.atoms] == [AtomKind.PANTS] * pants
        assert len(d.internal_edges) == 3 * genus - 3 + n

    def test_special_cases(self):
        assert canonical_decomposition(sphere("+")).atoms == (Atom.disk(1),)
        assert canonical_decomposition(sphere("+", "-")).atoms == (Atom.cylinder(1, -1),)
        torus = canonical_decomposition(Surface.connected(1))
        assert torus.atoms == (Atom.cylinder(1, -1),)
        assert torus.internal_edges == ((LegRef(0, 0), LegRef(0, 1)),)
        closed_sphere = canonical_decomposition(Surface.connected(0))
        assert [a.kind for a in closed_sphere.atoms] == [
            AtomKind.DISK,
            AtomKind.CYLINDER,
            AtomKind.DISK,
        ]

    def test_empty_surface(self):
        d = canonical_decomposition(Surface.empty())
        assert d == DecompositionGraph.empty()
        assert validate_decomposition(d, Surface.empty()) == []

    def test_disconnected_surface(self):
        s = disjoint_union(Surface.connected(1, ["+"]), sphere("-", "+", "+"))
        d = canonical_decomposition(s)
        assert validate_decomposition(d, s) == []
        assert infer_surface(d) == s

    @pytest.mark.parametrize("seed", range(10))
    def test_infer_surface_round_trip(self, seed):
        s = random_surface(np.random.default_rng(seed), max_genus=3, max_boundary=4)
        assert infer_surface(canonical_decomposition(s)) == s


class TestValidateDecomposition:
    def test_same_sign_edge(self):
        d = DecompositionGraph.build(
            [Atom.pants(1, 1, 1), Atom.pants(1, 1, 1)], [((0, 2), (1, 0))], [(0, 0), (0, 1), (1, 1), (1, 2)]
        )
        assert "edge-orientation" in axioms(d, sphere("+", "+", "+", "+"))

    def test_half_edge_used_twice(self):
        d = DecompositionGraph.build([Atom.pants()], [], [(0, 0), (0, 0), (0, 1)])
        assert "half-edge-coverage" in axioms(d, sphere("+", "+", "+"))

    def test_dangling_reference(self):
        d = DecompositionGraph.build([Atom.pants()], [], [(0, 0), (0, 1), (0, 3)])
        assert axioms(d, sphere("+", "+", "+")) == {"leg-ref"}

    def test_external_orientation(self):
        d = canonical_decomposition(sphere("+", "+", "+"))
        assert "external-orientation" in axioms(d, sphere("+", "+", "-"))

    def test_external_count(self):
        d = canonical_decomposition(sphere("+", "+", "+"))
        assert "external-count" in axioms(d, sphere("+", "+"))

    def test_genus_mismatch(self):
        # 2つのトーラスの分解は連結な種数2の曲面を分解しない
        two_tori = canonical_decomposition(disjoint_union(Surface.connected(1), Surface.connected(1)))
        assert "connectivity" in axioms(two_tori, Surface.connected(2))

    def test_euler_mismatch(self):
        d = canonical_decomposition(Surface.connected(1, ["+"]))
        assert "euler" in axioms(d, Surface.connected(2, ["+"]))

    def test_atoms_for_empty_surface_only(self):
        assert "empty" in axioms(DecompositionGraph.empty(), Surface.connected(0))


class TestMoves:
    def test_flip_keeps_validity(self):
        s = sphere("+", "-", "+", "-")
        d = canonical_decomposition(s)
        moved = flip(d, 0)
        assert validate_decomposition(moved, s) == []
        assert moved.external_legs == (LegRef(0, 0), LegRef(1, 1), LegRef(1, 2), LegRef(0, 1))

    def test_flip_twice_swaps_back_channels(self):
        s = sphere("+", "+", "+", "+")
        d = canonical_decomposition(s)
        twice = flip(flip(d, 0), 0)
        assert validate_decomposition(twice, s) == []

    def test_flip_requires_two_pants(self):
        torus = canonical_decomposition(Surface.connected(1))
        with pytest.raises(EdgeNotBetweenTwoPants):
            flip(torus, 0)
        handle = canonical_decomposition(Surface.connected(1, ["+", "+"]))
        assert 0 not in flippable_edges(handle)
        with pytest.raises(EdgeNotBetweenTwoPants):
            flip(handle, 0)

    def test_flip_index_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            flip(canonical_decomposition(sphere("+", "+", "+", "+")), 5)

    def test_subdivide_and_extend(self):
        s = Surface.connected(1, ["+", "-"])
        d = canonical_decomposition(s)
        assert validate_decomposition(subdivide_edge(d, 0), s) == []
        assert validate_decomposition(extend_leg(d, 1), s) == []
        assert validate_decomposition(subdivide_edge(subdivide_edge(d, 1), 1), s) == []

    @pytest.mark.parametrize("seed", range(20))
    def test_random_moves_stay_valid(self, seed):
        rng = np.random.default_rng(seed)
        s = random_surface(rng)
        d = canonical_decomposition(s)
        for _ in range(4):
            d, move = random_move(d, rng)
            assert validate_decomposition(d, s) == [], move


class TestGlueDecompositions:
    def test_matches_surface_gluing(self):
        s1 = Surface.connected(1, ["+", "+"])
        s2 = sphere("-", "-", "+")
        d = glue_decompositions(canonical_decomposition(s1), canonical_decomposition(s2), [(0, 0), (1, 1)])
        assert validate_decomposition(d, glue(s1, s2, [(0, 0), (1, 1)])) == []

    def test_self_glue(self):
        s = sphere("+", "-", "+")
        d = self_glue_decomposition(canonical_decomposition(s), 0, 1)
        assert validate_decomposition(d, self_glue(s, 0, 1)) == []

    def test_self_glue_errors(self):
        d = canonical_decomposition(sphere("+", "+", "-"))
        with pytest.raises(OrientationMismatch):
            self_glue_decomposition(d, 0, 1)
        with pytest.raises(IndexOutOfRange):
            self_glue_decomposition(d, 0, 3)

    def test_disjoint_union(self):
        s1, s2 = sphere("+", "+", "+"), Surface.connected(1)
        d = disjoint_union_decompositions(canonical_decomposition(s1), canonical_decomposition(s2))
        assert validate_decomposition(d, disjoint_union(s1, s2)) == []

    def test_associativity_up_to_reindexing(self):
        ds = [canonical_decomposition(sphere("-", "+", "+")) for _ in range(3)]
        ds[0] = canonical_decomposition(sphere("+", "+", "+"))
        left = glue_decompositions(glue_decompositions(ds[0], ds[1], [(2, 0)]), ds[2], [(3, 0)])
        right = glue_decompositions(ds[0], glue_decompositions(ds[1], ds[2], [(2, 0)]), [(2, 0)])
        assert left.atoms == right.atoms
        assert {frozenset(e) for e in left.internal_edges} == {frozenset(e) for e in right.internal_edges}
        assert left.external_legs == right.external_legs
