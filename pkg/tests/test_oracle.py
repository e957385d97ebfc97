"""
縮約計画と全列挙オラクルの比較
"""

import itertools
from collections.abc import Iterator

import numpy as np
import pytest

from blocks.blocks_engine.operations import brute_force_dim, dim_blocks, dim_tensor
from blocks.blocks_engine.verify import random_moves
from blocks.fusion_core.catalog import catalog
from blocks.surface_model.models import DecompositionGraph, Surface
from blocks.surface_model.operations import (
    canonical_decomposition,
    extend_leg,
    flip,
    flippable_edges,
    glue,
    glue_decompositions,
    random_move,
    subdivide_edge,
    validate_decomposition,
)
from tests.helpers import SMALL_RINGS, random_surface

MAX_EDGES = 6
CHUNKS = 10
CASES_PER_CHUNK = 50
# 分解の独立性を確かめる変形の回数と乱択の系列数
MOVE_DEPTH = 4
WALK_SEEDS = 8


def random_case(rng: np.random.Generator) -> tuple[str, Surface, DecompositionGraph, list[int]]:
    name = SMALL_RINGS[int(rng.integers(len(SMALL_RINGS)))]
    ring = catalog(name).ring
    surface = random_surface(rng, max_genus=2, max_boundary=3)
    d = canonical_decomposition(surface)
    for _ in range(int(rng.integers(3))):
        moved, _ = random_move(d, rng)
        if len(moved.internal_edges) > MAX_EDGES:
            break
        d = moved
    labels = [int(x) for x in rng.integers(ring.rank, size=surface.n_boundary)]
    return name, surface, d, labels


class TestOracle:
    @pytest.mark.parametrize("chunk", range(CHUNKS))
    def test_plan_matches_enumeration(self, chunk):
        rng = np.random.default_rng(1000 + chunk)
        for _ in range(CASES_PER_CHUNK):
            name, surface, d, labels = random_case(rng)
            ring = catalog(name).ring
            assert validate_decomposition(d, surface) == []
            expected = brute_force_dim(ring, d, labels)
            assert dim_blocks(ring, d, labels, surface=surface) == expected, (name, surface, labels)

    @pytest.mark.parametrize("name", SMALL_RINGS)
    def test_tensor_matches_enumeration(self, name):
        ring = catalog(name).ring
        s = Surface.connected(1, ["+", "-"])
        d = canonical_decomposition(s)
        tensor = dim_tensor(ring, d, surface=s)
        for labels, value in tensor.items():
            assert value == brute_force_dim(ring, d, labels)


def neighbours(d: DecompositionGraph, *, flips_only: bool = False) -> Iterator[DecompositionGraph]:
    """flip・円筒挿入（辺の細分と脚の延長）を1回適用した分解をすべて並べる"""
    for edge in flippable_edges(d):
        yield flip(d, edge)
    if flips_only:
        return
    for edge in range(len(d.internal_edges)):
        yield subdivide_edge(d, edge)
    for position in range(len(d.external_legs)):
        yield extend_leg(d, position)


def reachable(d: DecompositionGraph, depth: int, *, flips_only: bool = False) -> set[DecompositionGraph]:
    """depth 回以内の変形で到達できる分解"""
    seen = {d}
    frontier = [d]
    for _ in range(depth):
        step: list[DecompositionGraph] = []
        for graph in frontier:
            for moved in neighbours(graph, flips_only=flips_only):
                if moved not in seen:
                    seen.add(moved)
                    step.append(moved)
        frontier = step
    return seen


class TestDecompositionIndependence:
    @pytest.mark.parametrize("name", SMALL_RINGS)
    @pytest.mark.parametrize(("genus", "n"), itertools.product(range(3), range(4)))
    def test_random_walks_keep_tensor(self, name, genus, n):
        ring = catalog(name).ring
        for seed in range(WALK_SEEDS):
            rng = np.random.default_rng(100 * (genus * 7 + n) + seed)
            s = Surface.connected(genus, ["+" if rng.random() < 0.5 else "-" for _ in range(n)])
            d = canonical_decomposition(s)
            expected = dim_tensor(ring, d, surface=s).values
            for _ in range(MOVE_DEPTH):
                d, moves = random_moves(d, 1, rng)
                assert validate_decomposition(d, s) == []
                assert dim_tensor(ring, d, surface=s).values == expected, (seed, moves)

    @pytest.mark.parametrize("name", ["ising", "z_3"])
    @pytest.mark.parametrize(
        "orientations", [("+", "+", "-"), ("-", "-", "+"), ("+",), ("-",), ()], ids=str
    )
    def test_every_move_sequence(self, name, orientations):
        ring = catalog(name).ring
        genus = {3: 0, 1: 1, 0: 2}[len(orientations)]
        s = Surface.connected(genus, orientations)
        d = canonical_decomposition(s)
        expected = dim_tensor(ring, d, surface=s).values
        graphs = reachable(d, MOVE_DEPTH)
        assert len(graphs) > MOVE_DEPTH
        for moved in graphs:
            assert dim_tensor(ring, moved, surface=s).values == expected

    @pytest.mark.parametrize("name", ["ising", "fibonacci", "z_3"])
    @pytest.mark.parametrize(("genus", "n"), [(0, 4), (0, 5), (1, 2), (2, 1), (3, 0)])
    def test_every_flip_sequence(self, name, genus, n):
        ring = catalog(name).ring
        s = Surface.connected(genus, ["+" if i % 2 else "-" for i in range(n)])
        d = canonical_decomposition(s)
        expected = dim_tensor(ring, d, surface=s).values
        for moved in reachable(d, MOVE_DEPTH, flips_only=True):
            assert validate_decomposition(moved, s) == []
            assert dim_tensor(ring, moved, surface=s).values == expected

    @pytest.mark.parametrize("name", SMALL_RINGS)
    def test_genus_two_from_two_handles(self, name):
        ring = catalog(name).ring
        s1, s2 = Surface.connected(1, ["+"]), Surface.connected(1, ["-"])
        glued = glue(s1, s2, [(0, 0)])
        d = glue_decompositions(canonical_decomposition(s1), canonical_decomposition(s2), [(0, 0)])
        assert dim_blocks(ring, d, [], surface=glued) == dim_blocks(
            ring, canonical_decomposition(glued), [], surface=glued
        )
