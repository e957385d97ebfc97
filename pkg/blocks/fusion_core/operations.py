"""
Fusion ring operations

融合環の公理検証、真空多重度 N₀ の計算、S 行列からの Verlinde 再構成
"""

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from blocks.config import get_settings
from blocks.errors import InvalidArgument, ResidualTooLarge
from blocks.fusion_core.models import (
    VACUUM,
    FusionRing,
    FusionTensor,
    Label,
    ModularData,
    ValidationIssue,
)

logger = logging.getLogger(__name__)


def validate_ring(ring: FusionRing) -> list[ValidationIssue]:
    """
    融合環の公理をすべて検査する

    違反は例外ではなくレポートの項目として返す。

    Args:
        ring: 検査する融合環

    Returns:
        違反のリスト（空なら有効な環）
    """
    rank = ring.rank
    report: list[ValidationIssue] = []

    if rank < 1:
        return [ValidationIssue("shape", (), "label set must not be empty")]
    if len(ring.dual) != rank:
        report.append(
            ValidationIssue("shape", (len(ring.dual),), f"dual has {len(ring.dual)} entries, expected {rank}")
        )
    shape_ok = len(ring.n_tensor) == rank and all(
        len(row) == rank and all(len(col) == rank for col in row) for row in ring.n_tensor
    )
    if not shape_ok:
        report.append(ValidationIssue("shape", (rank,), f"fusion tensor is not {rank}x{rank}x{rank}"))
    if report:
        return report

    n = ring.array
    labels = range(rank)

    for a, b, c in zip(*np.nonzero(n < 0), strict=True):
        report.append(
            ValidationIssue("nonnegative", (int(a), int(b), int(c)), f"N[{a},{b}]^{c} = {n[a, b, c]} < 0")
        )

    dual_ok = all(0 <= ring.dual[a] < rank for a in labels)
    if not dual_ok:
        for a in labels:
            if not 0 <= ring.dual[a] < rank:
                report.append(ValidationIssue("dual-involution", (a,), f"dual({a}) = {ring.dual[a]} out of range"))
    else:
        for a in labels:
            if ring.dual[ring.dual[a]] != a:
                report.append(ValidationIssue("dual-involution", (a,), f"dual(dual({a})) != {a}"))
    if ring.dual[VACUUM] != VACUUM:
        report.append(ValidationIssue("dual-vacuum", (VACUUM,), "dual of the vacuum is not the vacuum"))

    identity = np.eye(rank, dtype=np.int64)
    for a, b in zip(*np.nonzero(n[VACUUM] != identity), strict=True):
        report.append(ValidationIssue("unit-left", (int(a), int(b)), f"N[0,{a}]^{b} = {n[VACUUM, a, b]}"))
    for a, b in zip(*np.nonzero(n[:, VACUUM, :] != identity), strict=True):
        report.append(ValidationIssue("unit-right", (int(a), int(b)), f"N[{a},0]^{b} = {n[a, VACUUM, b]}"))

    for a, b, c in zip(*np.nonzero(n != n.transpose(1, 0, 2)), strict=True):
        if a < b:
            report.append(
                ValidationIssue("commutativity", (int(a), int(b), int(c)), f"N[{a},{b}]^{c} != N[{b},{a}]^{c}")
            )

    # (a⊠b)⊠c と a⊠(b⊠c) の d 成分
    left = np.einsum("abs,scd->abcd", n, n)
    right = np.einsum("bcs,asd->abcd", n, n)
    for a, b, c, d in zip(*np.nonzero(left != right), strict=True):
        report.append(
            ValidationIssue(
                "associativity",
                (int(a), int(b), int(c), int(d)),
                f"(({a}{b}){c})^{d} = {left[a, b, c, d]} but ({a}({b}{c}))^{d} = {right[a, b, c, d]}",
            )
        )

    if dual_ok:
        for a in labels:
            for b in labels:
                expected = 1 if b == ring.dual[a] else 0
                if n[a, b, VACUUM] != expected:
                    report.append(
                        ValidationIssue("rigidity", (a, b), f"N[{a},{b}]^0 = {n[a, b, VACUUM]}, expected {expected}")
                    )
        bar = np.array(ring.dual)
        conjugated = n[np.ix_(bar, bar, bar)]
        for a, b, c in zip(*np.nonzero(n != conjugated), strict=True):
            report.append(
                ValidationIssue(
                    "dual-compatibility",
                    (int(a), int(b), int(c)),
                    f"N[{a},{b}]^{c} != N[{bar[a]},{bar[b]}]^{bar[c]}",
                )
            )

    if report:
        logger.info(f"Ring {ring.name}: {len(report)} axiom violations")
    return report


def validate_modular_data(
    data: ModularData,
    *,
    require_unitary: bool = True,
    tolerance: float | None = None,
) -> list[ValidationIssue]:
    """
    モジュラーデータ（環 + S 行列）を検査する

    Args:
        data: 検査するデータ
        require_unitary: S のユニタリ性も要求するか（縮退した z2_boson では False）
        tolerance: 数値許容値（省略時は τ_S）

    Returns:
        違反のリスト
    """
    tol = get_settings().s_tolerance if tolerance is None else tolerance
    report = validate_ring(data.ring)
    rank = data.rank
    s = np.asarray(data.s_matrix, dtype=complex)

    if s.shape != (rank, rank):
        report.append(ValidationIssue("s-shape", s.shape, f"S has shape {s.shape}, expected {(rank, rank)}"))
        return report

    for a, b in zip(*np.nonzero(np.abs(s - s.T) > tol), strict=True):
        if a < b:
            report.append(ValidationIssue("s-symmetric", (int(a), int(b)), f"S[{a},{b}] != S[{b},{a}]"))

    if require_unitary:
        deviation = np.abs(s @ s.conj().T - np.eye(rank))
        for a, b in zip(*np.nonzero(deviation > tol), strict=True):
            report.append(
                ValidationIssue("s-unitary", (int(a), int(b)), f"(SS†)[{a},{b}] deviates by {deviation[a, b]:.3e}")
            )

    for label in range(rank):
        entry = s[VACUUM, label]
        if entry.real <= tol or abs(entry.imag) > tol:
            report.append(ValidationIssue("s-positive-row", (label,), f"S[0,{label}] = {entry} is not positive"))

    return report


def n3(ring: FusionRing, a: Label, b: Label, c: Label) -> int:
    """
    λ⊠μ⊠ν に含まれる真空の多重度 N₀^{λμν}

    Args:
        ring: 融合環
        a, b, c: ラベル

    Returns:
        N_{ab}^{c̄}
    """
    for label in (a, b, c):
        ring.check_label(label)
    return ring.n(a, b, ring.bar(c))


def n_vacuum(ring: FusionRing, labels: Sequence[Label]) -> int:
    """
    λ₁⊠…⊠λₙ に含まれる真空の多重度（左から順に縮約）

    Args:
        ring: 融合環
        labels: ラベル列（空でもよい）

    Returns:
        N₀^{λ₁…λₙ}
    """
    for label in labels:
        ring.check_label(label)
    rank = ring.rank
    # 空積は単位元
    vector = [1 if c == VACUUM else 0 for c in range(rank)]
    for label in labels:
        vector = [
            sum(vector[b] * ring.n(b, label, c) for b in range(rank) if vector[b]) for c in range(rank)
        ]
    return vector[VACUUM]


def n_vacuum_tree(ring: FusionRing, labels: Sequence[Label]) -> int:
    """左櫛型の融合木の全ラベリングを列挙して N₀ を数える（独立オラクル）"""
    for label in labels:
        ring.check_label(label)
    count = len(labels)
    if count == 0:
        return 1
    if count == 1:
        return 1 if labels[0] == VACUUM else 0

    total = 0
    for inner in itertools.product(range(ring.rank), repeat=count - 2):
        # 中間ラベル x_1 … x_{n-2}、最後は真空へ
        chain = (*inner, VACUUM)
        term = ring.n(labels[0], labels[1], chain[0])
        for step in range(1, count - 1):
            if not term:
                break
            term *= ring.n(chain[step - 1], labels[step + 1], chain[step])
        total += term
    return total


def fusion_matrix(ring: FusionRing, label: Label) -> npt.NDArray[np.int64]:
    """融合行列 (N_λ)_{μν} = N_{λμ}^ν"""
    ring.check_label(label)
    return np.array(ring.array[label])


@dataclass(frozen=True)
class VerlindeReconstruction:
    """S 行列から再構成した融合テンソルと各成分の丸め誤差"""

    n_tensor: FusionTensor
    residuals: tuple[tuple[tuple[float, ...], ...], ...]

    @property
    def max_residual(self) -> float:
        return max((r for plane in self.residuals for row in plane for r in row), default=0.0)


def verlinde_from_s(data: ModularData, *, tolerance: float | None = None) -> VerlindeReconstruction:
    """
    Verlinde 公式で S 行列から N を再構成する

    N_{λμ}^ν = Σ_ρ S_{λρ} S_{μρ} conj(S_{νρ}) / S_{0ρ}

    Args:
        data: モジュラーデータ
        tolerance: 整数からのずれの許容値（省略時は τ_S）

    Returns:
        丸めた融合テンソルと残差

    Raises:
        ResidualTooLarge: いずれかの成分が整数から tolerance 以上ずれている
    """
    tol = get_settings().s_tolerance if tolerance is None else tolerance
    s = data.s
    raw = np.einsum("ar,br,cr->abc", s, s, s.conj() / s[VACUUM])
    rounded = np.rint(raw.real)
    residual = np.abs(raw - rounded)

    worst = np.unravel_index(int(np.argmax(residual)), residual.shape)
    if residual[worst] > tol:
        raise ResidualTooLarge(tuple(int(i) for i in worst), float(residual[worst]), tol)

    tensor = tuple(tuple(tuple(int(x) for x in row) for row in plane) for plane in rounded)
    residuals = tuple(tuple(tuple(float(x) for x in row) for row in plane) for plane in residual)
    logger.debug(f"Verlinde reconstruction of {data.name}: max residual {residual[worst]:.3e}")
    return VerlindeReconstruction(n_tensor=tensor, residuals=residuals)


def quantum_dims(data: ModularData) -> tuple[float, ...]:
    """
    量子次元 d_λ = S_{0λ} / S_{00}

    Args:
        data: モジュラーデータ

    Returns:
        ラベル順の量子次元
    """
    row = data.s[VACUUM]
    return tuple(float((row[label] / row[VACUUM]).real) for label in range(data.rank))


def global_dimension(data: ModularData) -> float:
    """全次元 D = 1 / S_{00}（D² = Σ d_λ²）"""
    return float(1.0 / data.s[VACUUM, VACUUM].real)


def frobenius_perron_dims(ring: FusionRing) -> tuple[float, ...]:
    """各融合行列の最大固有値（Frobenius–Perron 次元）"""
    dims = []
    for label in range(ring.rank):
        eigenvalues = np.linalg.eigvals(ring.array[label].astype(float))
        dims.append(float(np.max(np.abs(eigenvalues))))
    return tuple(dims)


def ring_isomorphism(first: FusionRing, second: FusionRing) -> tuple[int, ...] | None:
    """
    真空を固定し N と双対を保つラベルの全単射を総当たりで探す

    Args:
        first: 元の環
        second: 比較先の環

    Returns:
        first のラベル i を second の perm[i] に写す置換（なければ None）
    """
    if first.rank != second.rank:
        return None
    if first.rank == 0:
        raise InvalidArgument("rings must have at least one label")
    a = first.array
    b = second.array
    for tail in itertools.permutations(range(1, first.rank)):
        perm = (VACUUM, *tail)
        index = np.array(perm)
        if any(second.dual[perm[x]] != perm[first.dual[x]] for x in range(first.rank)):
            continue
        if np.array_equal(b[np.ix_(index, index, index)], a):
            return perm
    return None
