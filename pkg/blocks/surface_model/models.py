"""
Surface models

向き付き境界を持つコンパクト曲面と、パンツ・円筒・円板への分解グラフ
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple


class Orientation(str, Enum):
    """境界円周の向き（曲面から誘導された向きか、その逆か）"""

    INDUCED = "+"
    REVERSED = "-"

    @property
    def sign(self) -> int:
        return 1 if self is Orientation.INDUCED else -1

    @classmethod
    def from_sign(cls, sign: int) -> "Orientation":
        return cls.INDUCED if sign > 0 else cls.REVERSED

    def reversed(self) -> "Orientation":
        return Orientation.REVERSED if self is Orientation.INDUCED else Orientation.INDUCED


@dataclass(frozen=True)
class BoundaryCircle:
    orientation: Orientation = Orientation.INDUCED
    label: str | None = None


@dataclass(frozen=True)
class Component:
    """連結成分（種数と、属する境界円周のインデックス）"""

    genus: int
    circles: tuple[int, ...] = ()

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - len(self.circles)


@dataclass(frozen=True)
class Surface:
    """
    コンパクト向き付き曲面の位相型

    Attributes:
        boundary: 順序付きの境界円周
        components: 連結成分（境界インデックスを分割する）
    """

    boundary: tuple[BoundaryCircle, ...]
    components: tuple[Component, ...]

    @classmethod
    def connected(
        cls,
        genus: int,
        boundary: Iterable[BoundaryCircle | Orientation | str] = (),
    ) -> "Surface":
        """
        連結曲面を作る

        Args:
            genus: 種数 g
            boundary: 境界円周（"+" / "-" の文字列でもよい）
        """
        circles = tuple(_as_circle(item) for item in boundary)
        return cls(boundary=circles, components=(Component(genus, tuple(range(len(circles)))),))

    @classmethod
    def empty(cls) -> "Surface":
        return cls(boundary=(), components=())

    @property
    def genus(self) -> int:
        return sum(component.genus for component in self.components)

    @property
    def n_boundary(self) -> int:
        return len(self.boundary)

    @property
    def euler_characteristic(self) -> int:
        return sum(component.euler_characteristic for component in self.components)

    @property
    def is_connected(self) -> bool:
        return len(self.components) == 1

    @property
    def is_closed(self) -> bool:
        return not self.boundary

    def component_of(self, circle: int) -> int:
        for index, component in enumerate(self.components):
            if circle in component.circles:
                return index
        raise KeyError(circle)

    def orientations(self) -> tuple[Orientation, ...]:
        return tuple(circle.orientation for circle in self.boundary)


def _as_circle(item: BoundaryCircle | Orientation | str) -> BoundaryCircle:
    if isinstance(item, BoundaryCircle):
        return item
    return BoundaryCircle(orientation=Orientation(item))


class AtomKind(str, Enum):
    PANTS = "pants"
    CYLINDER = "cylinder"
    DISK = "disk"

    @property
    def leg_count(self) -> int:
        return _LEG_COUNT[self]

    @property
    def euler_characteristic(self) -> int:
        # 種数 0 で脚が k 本の曲面
        return 2 - self.leg_count


_LEG_COUNT = {AtomKind.PANTS: 3, AtomKind.CYLINDER: 2, AtomKind.DISK: 1}


@dataclass(frozen=True)
class Atom:
    """
    分解の部品（パンツ・円筒・円板）

    signs[i] は脚 i の円周の向きが部品から誘導されたものなら +1、逆なら -1。
    """

    kind: AtomKind
    signs: tuple[int, ...]

    @classmethod
    def pants(cls, *signs: int) -> "Atom":
        return cls(AtomKind.PANTS, tuple(signs) if signs else (1, 1, 1))

    @classmethod
    def cylinder(cls, *signs: int) -> "Atom":
        return cls(AtomKind.CYLINDER, tuple(signs) if signs else (1, 1))

    @classmethod
    def disk(cls, sign: int = 1) -> "Atom":
        return cls(AtomKind.DISK, (sign,))

    @property
    def legs(self) -> int:
        return len(self.signs)


class LegRef(NamedTuple):
    """半辺（部品のインデックスと脚のインデックス）"""

    atom: int
    leg: int

    def __str__(self) -> str:
        return f"{self.atom}.{self.leg}"


Edge = tuple[LegRef, LegRef]


@dataclass(frozen=True)
class DecompositionGraph:
    """
    曲面の分解グラフ

    Attributes:
        atoms: 部品のリスト
        internal_edges: 切断円周（符号が逆の半辺の組）
        external_legs: 境界円周に順に対応する半辺
    """

    atoms: tuple[Atom, ...]
    internal_edges: tuple[Edge, ...]
    external_legs: tuple[LegRef, ...]

    @classmethod
    def build(
        cls,
        atoms: Sequence[Atom],
        internal_edges: Sequence[tuple[tuple[int, int], tuple[int, int]]],
        external_legs: Sequence[tuple[int, int]],
    ) -> "DecompositionGraph":
        return cls(
            atoms=tuple(atoms),
            internal_edges=tuple((LegRef(*u), LegRef(*v)) for u, v in internal_edges),
            external_legs=tuple(LegRef(*leg) for leg in external_legs),
        )

    @classmethod
    def empty(cls) -> "DecompositionGraph":
        return cls(atoms=(), internal_edges=(), external_legs=())

    def sign(self, ref: LegRef) -> int:
        return self.atoms[ref.atom].signs[ref.leg]

    def half_edges(self) -> list[LegRef]:
        return [LegRef(a, leg) for a, atom in enumerate(self.atoms) for leg in range(atom.legs)]
