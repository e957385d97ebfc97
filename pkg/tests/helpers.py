"""テスト用の小さな道具"""

import itertools
from collections.abc import Iterator

import numpy as np

from blocks.fusion_core.models import FusionRing
from blocks.surface_model.models import Surface

# 全列挙テスト用（|Δ| ≤ 4）
SMALL_RINGS = ["trivial", "ising", "fibonacci", "z_3", "su2_3", "z2_boson"]
MODULAR_RINGS = [
    "trivial",
    "ising",
    "fibonacci",
    "su2_1",
    "su2_2",
    "su2_3",
    "su2_4",
    "z_2",
    "z_3",
    "z_5",
]


def sphere(*orientations: str) -> Surface:
    return Surface.connected(0, orientations)


def random_surface(rng: np.random.Generator, max_genus: int = 2, max_boundary: int = 3) -> Surface:
    genus = int(rng.integers(max_genus + 1))
    n = int(rng.integers(max_boundary + 1))
    return Surface.connected(genus, ["+" if rng.random() < 0.5 else "-" for _ in range(n)])


def labelings(ring: FusionRing, count: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(ring.rank), repeat=count)
