"""
Catalog

標準的な融合環・モジュラーデータ（trivial, ising, fibonacci, su2_k, z_n, z2_boson）
"""

import logging
import math
import re
from collections.abc import Callable

import numpy as np

from blocks.errors import UnknownCatalogName, ValidationError
from blocks.fusion_core.models import FusionRing, ModularData
from blocks.fusion_core.operations import validate_modular_data

logger = logging.getLogger(__name__)

# --list で表示する名前（パラメータ付きの族は <k>, <n> で表す）
CATALOG_NAMES = ("trivial", "ising", "fibonacci", "su2_<k>", "z_<n>", "z2_boson")

_SU2_PATTERN = re.compile(r"^su2_(\d+)$")
_ZN_PATTERN = re.compile(r"^z_(\d+)$")


def catalog_names() -> tuple[str, ...]:
    return CATALOG_NAMES


def trivial() -> ModularData:
    ring = FusionRing.from_function("trivial", ["1"], [0], lambda a, b, c: 1)
    return ModularData.from_array(ring, [[1.0]])


def ising() -> ModularData:
    # σ⊠σ = 1⊕ψ, σ⊠ψ = σ, ψ⊠ψ = 1
    table = {
        (1, 1): {0, 2},
        (1, 2): {1},
        (2, 1): {1},
        (2, 2): {0},
    }

    def rule(a: int, b: int, c: int) -> int:
        if a == 0:
            return int(b == c)
        if b == 0:
            return int(a == c)
        return int(c in table[(a, b)])

    ring = FusionRing.from_function("ising", ["1", "sigma", "psi"], [0, 1, 2], rule)
    r2 = math.sqrt(2.0)
    s = 0.5 * np.array([[1.0, r2, 1.0], [r2, 0.0, -r2], [1.0, -r2, 1.0]])
    return ModularData.from_array(ring, s)


def fibonacci() -> ModularData:
    # τ⊠τ = 1⊕τ
    def rule(a: int, b: int, c: int) -> int:
        if a == 0:
            return int(b == c)
        if b == 0:
            return int(a == c)
        return 1

    ring = FusionRing.from_function("fibonacci", ["1", "tau"], [0, 1], rule)
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    s = np.array([[1.0, phi], [phi, -1.0]]) / math.sqrt(2.0 + phi)
    return ModularData.from_array(ring, s)


def su2_level(k: int) -> ModularData:
    """
    SU(2)_k（ラベルはスピン 0, 1/2, …, k/2、すべて自己双対）

    Args:
        k: レベル（k ≥ 1）
    """
    if k < 1:
        raise UnknownCatalogName(f"su2_{k}: level must be at least 1")

    def rule(a: int, b: int, c: int) -> int:
        # 2j で表した整数スピンの切断付き Clebsch–Gordan 則
        return int(abs(a - b) <= c <= min(a + b, 2 * k - a - b) and (a + b + c) % 2 == 0)

    labels = [str(j // 2) if j % 2 == 0 else f"{j}/2" for j in range(k + 1)]
    ring = FusionRing.from_function(f"su2_{k}", labels, list(range(k + 1)), rule)
    idx = np.arange(k + 1)
    s = math.sqrt(2.0 / (k + 2)) * np.sin(math.pi * np.outer(idx + 1, idx + 1) / (k + 2))
    return ModularData.from_array(ring, s)


def cyclic(n: int) -> ModularData:
    """
    Z_n のポインテッド環（a⊠b = a+b mod n）と S_{ab} = exp(2πi ab/n)/√n

    Args:
        n: 位数（n ≥ 1）
    """
    if n < 1:
        raise UnknownCatalogName(f"z_{n}: order must be at least 1")
    ring = FusionRing.from_function(
        f"z_{n}",
        [str(a) for a in range(n)],
        [(-a) % n for a in range(n)],
        lambda a, b, c: int((a + b) % n == c),
    )
    idx = np.arange(n)
    s = np.exp(2j * math.pi * np.outer(idx, idx) / n) / math.sqrt(n)
    return ModularData.from_array(ring, s)


def z2_boson() -> ModularData:
    """
    Z_2 の融合則に自明なモノドロミーの S̃ を載せた非モジュラーな例

    S̃_{ab} = d_a d_b / D はすべて 1/√2 で、ユニタリではない。
    """
    ring = FusionRing.from_function(
        "z2_boson", ["1", "boson"], [0, 1], lambda a, b, c: int((a + b) % 2 == c)
    )
    s = np.full((2, 2), 1.0 / math.sqrt(2.0))
    return ModularData.from_array(ring, s)


_FIXED: dict[str, Callable[[], ModularData]] = {
    "trivial": trivial,
    "ising": ising,
    "fibonacci": fibonacci,
    "z2_boson": z2_boson,
}

# 意図的に縮退させたエントリ（ユニタリ性は検査しない）
DEGENERATE = frozenset({"z2_boson"})


def catalog(name: str) -> ModularData:
    """
    名前からカタログのデータを作り、検証してから返す

    Args:
        name: trivial, ising, fibonacci, su2_<k>, z_<n>, z2_boson

    Returns:
        検証済みの ModularData

    Raises:
        UnknownCatalogName: 未知の名前
    """
    key = name.strip().lower()
    if key in _FIXED:
        data = _FIXED[key]()
    elif match := _SU2_PATTERN.match(key):
        data = su2_level(int(match.group(1)))
    elif match := _ZN_PATTERN.match(key):
        data = cyclic(int(match.group(1)))
    else:
        raise UnknownCatalogName(f"unknown catalog name: {name!r}")

    report = validate_modular_data(data, require_unitary=key not in DEGENERATE)
    if report:
        raise ValidationError(f"catalog entry {key} failed validation", report)
    logger.debug(f"Loaded catalog entry {key} with {data.rank} labels")
    return data
