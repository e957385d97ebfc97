"""
Command line

blocks コマンド（dim, glue, verify-moves, modularity, catalog）

終了コード: 0 成功、1 検証の不一致、2 入力エラー（標準エラーに JSON）
"""

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any, NoReturn

import numpy as np

from blocks.blocks_engine.operations import brute_force_dim, dim_blocks, dim_tensor
from blocks.blocks_engine.verify import random_moves, verify_factorization_all
from blocks.cli_io.documents import (
    parse_ring,
    parse_surface,
    render_json,
    serialize_ring,
    surface_payload,
)
from blocks.config import get_settings
from blocks.errors import BlocksError, InvalidArgument, ParseError, ValidationError
from blocks.fusion_core.catalog import catalog, catalog_names
from blocks.fusion_core.models import FusionRing, Label, ModularData
from blocks.logging_setup import configure_logging
from blocks.modularity.operations import cross_check, detect_transparent
from blocks.surface_model.models import DecompositionGraph, Surface
from blocks.surface_model.operations import (
    canonical_decomposition,
    glue,
    glue_decompositions,
    self_glue,
    self_glue_decomposition,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2


class _ArgumentParser(argparse.ArgumentParser):
    """引数エラーも JSON で報告するために例外へ変換する"""

    def error(self, message: str) -> NoReturn:
        raise InvalidArgument(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="blocks", description="共形ブロック空間の次元計算")
    parser.add_argument("--seed", type=int, default=0, help="乱択検証の乱数シード")
    parser.add_argument("--log-level", default=None, help="ログレベル（既定は BLOCKS_LOG_LEVEL）")
    commands = parser.add_subparsers(dest="command", required=True)

    dim = commands.add_parser("dim", help="次元を計算する")
    dim.add_argument("--ring", type=Path, required=True)
    dim.add_argument("--surface", type=Path, required=True)
    dim.add_argument("--labels", default=None, help="境界ラベル名をカンマ区切りで")
    dim.add_argument("--all", action="store_true", help="次元テンソル全体を出力する")
    dim.add_argument("--method", choices=["plan", "brute"], default="plan")

    glue_cmd = commands.add_parser("glue", help="曲面を貼り合わせる")
    glue_cmd.add_argument("--ring", type=Path, required=True)
    glue_cmd.add_argument("--a", type=Path, required=True)
    glue_cmd.add_argument("--b", type=Path, default=None, help="省略時は --a の自己接着")
    glue_cmd.add_argument("--match", required=True, help="i:j をカンマ区切りで")
    glue_cmd.add_argument("--verify", action="store_true", help="全ラベリングで因子分解を検証する")

    moves = commands.add_parser("verify-moves", help="flip と円筒挿入での不変性を検証する")
    moves.add_argument("--ring", type=Path, required=True)
    moves.add_argument("--surface", type=Path, required=True)
    moves.add_argument("--flips", type=int, default=4)

    modularity = commands.add_parser("modularity", help="透明なラベルと Verlinde 照合")
    modularity.add_argument("--ring", type=Path, required=True)
    modularity.add_argument("--genus-max", type=int, default=3)

    catalog_cmd = commands.add_parser("catalog", help="標準カタログ")
    group = catalog_cmd.add_mutually_exclusive_group(required=True)
    group.add_argument("--list", action="store_true")
    group.add_argument("--emit", metavar="NAME")

    return parser


# 入力


def _read(path: Path) -> bytes:
    try:
        return path.read_bytes()
    except OSError as e:
        raise InvalidArgument(f"cannot read {path}: {e.strerror}") from e


def _load_ring(path: Path) -> FusionRing | ModularData:
    return parse_ring(_read(path))


def _fusion_ring(data: FusionRing | ModularData) -> FusionRing:
    return data.ring if isinstance(data, ModularData) else data


def _load_surface(path: Path, ring: FusionRing) -> tuple[Surface, DecompositionGraph]:
    surface, d = parse_surface(_read(path))
    named = [c.label for c in surface.boundary if c.label is not None]
    unknown = [name for name in named if name not in ring.labels]
    if unknown:
        raise InvalidArgument(f"surface {path} names unknown labels {unknown} for ring {ring.name}")
    return surface, d if d is not None else canonical_decomposition(surface)


def _label_indices(ring: FusionRing, text: str | None, surface: Surface) -> list[Label]:
    """--labels、なければ文書の境界ラベル（全円周に付いているとき）を番号にする"""
    count = surface.n_boundary
    if text:
        names = [name.strip() for name in text.split(",")]
    elif all(c.label is not None for c in surface.boundary):
        names = [c.label for c in surface.boundary if c.label is not None]
    else:
        names = []
    if len(names) != count:
        raise InvalidArgument(f"expected {count} boundary labels, got {len(names)}")
    lookup = {name: i for i, name in enumerate(ring.labels)}
    unknown = [name for name in names if name not in lookup]
    if unknown:
        raise InvalidArgument(f"unknown labels {unknown} for ring {ring.name}")
    return [lookup[name] for name in names]


def _matching(text: str) -> list[tuple[int, int]]:
    pairs = []
    for item in text.split(","):
        left, sep, right = item.strip().partition(":")
        if not sep or not left.strip().isdigit() or not right.strip().isdigit():
            raise InvalidArgument(f"malformed match {item!r}, expected i:j")
        pairs.append((int(left), int(right)))
    return pairs


def _names(ring: FusionRing, labels: Sequence[Label]) -> list[str]:
    return [ring.labels[label] for label in labels]


# コマンド


def cmd_dim(args: argparse.Namespace) -> int:
    ring = _fusion_ring(_load_ring(args.ring))
    surface, d = _load_surface(args.surface, ring)

    if args.all:
        tensor = dim_tensor(ring, d, surface=surface)
        document = {
            "ring": ring.name,
            "boundary": [c.orientation.value for c in surface.boundary],
            "entries": [
                {"labels": _names(ring, labels), "dim": value} for labels, value in tensor.items()
            ],
        }
        sys.stdout.write(render_json(document))
        return EXIT_OK

    labels = _label_indices(ring, args.labels, surface)
    if args.method == "brute":
        value = brute_force_dim(ring, d, labels)
    else:
        value = dim_blocks(ring, d, labels, surface=surface)
    sys.stdout.write(f"{value}\n")
    return EXIT_OK


def cmd_glue(args: argparse.Namespace) -> int:
    ring = _fusion_ring(_load_ring(args.ring))
    s1, d1 = _load_surface(args.a, ring)
    pairs = _matching(args.match)

    s2: Surface | None
    d2: DecompositionGraph | None
    if args.b is None:
        if len(pairs) != 1:
            raise InvalidArgument("self-gluing takes exactly one i:j pair")
        ((i, j),) = pairs
        s2, d2 = None, None
        glued = self_glue(s1, i, j)
        glued_d = self_glue_decomposition(d1, i, j)
    else:
        s2, d2 = _load_surface(args.b, ring)
        glued = glue(s1, s2, pairs)
        glued_d = glue_decompositions(d1, d2, pairs)

    if not args.verify:
        sys.stdout.write(render_json(surface_payload(glued, glued_d)))
        return EXIT_OK

    summary = verify_factorization_all(ring, s1, s2, pairs, d1=d1, d2=d2)
    document: dict[str, Any] = {
        "surface": surface_payload(glued, glued_d),
        "factorization": {
            "checked": summary.checked,
            "equal": summary.equal,
            "mismatches": [
                {"labels": _names(ring, r.labels), "lhs": r.lhs, "rhs": r.rhs}
                for r in summary.mismatches
            ],
        },
    }
    sys.stdout.write(render_json(document))
    return EXIT_OK if summary.equal else EXIT_MISMATCH


def cmd_verify_moves(args: argparse.Namespace, rng: np.random.Generator) -> int:
    if args.flips < 0:
        raise InvalidArgument("--flips must be nonnegative")
    ring = _fusion_ring(_load_ring(args.ring))
    surface, d = _load_surface(args.surface, ring)
    reference = dim_tensor(ring, d, surface=surface)

    steps = []
    for _ in range(args.flips):
        d, (move,) = random_moves(d, 1, rng)
        equal = dim_tensor(ring, d, surface=surface).values == reference.values
        steps.append({"move": move, "atoms": len(d.atoms), "equal": equal})

    equal = all(step["equal"] for step in steps)
    document = {"ring": ring.name, "seed": args.seed, "equal": equal, "moves": steps}
    sys.stdout.write(render_json(document))
    if not equal:
        logger.warning("Dimension tensor changed under a local move")
    return EXIT_OK if equal else EXIT_MISMATCH


def cmd_modularity(args: argparse.Namespace) -> int:
    data = _load_ring(args.ring)
    if not isinstance(data, ModularData):
        raise InvalidArgument(f"ring document {args.ring} has no s_matrix")

    report = detect_transparent(data)
    document: dict[str, Any] = {
        "name": data.name,
        "is_modular": report.is_modular,
        "transparent": _names(data.ring, report.transparent_labels),
        "deviations": {data.ring.labels[i]: dev for i, dev in enumerate(report.deviations)},
    }
    agree = True
    if report.is_modular:
        rows = cross_check(data, args.genus_max)
        agree = all(row.agree for row in rows)
        document["cross_check"] = [
            {"genus": r.genus, "state_sum": r.state_sum, "verlinde": r.verlinde, "agree": r.agree}
            for r in rows
        ]
    sys.stdout.write(render_json(document))
    return EXIT_OK if agree else EXIT_MISMATCH


def cmd_catalog(args: argparse.Namespace) -> int:
    if args.list:
        sys.stdout.write("".join(f"{name}\n" for name in catalog_names()))
        return EXIT_OK
    sys.stdout.write(serialize_ring(catalog(args.emit)).decode("utf-8"))
    return EXIT_OK


def _error_document(error: BaseException) -> dict[str, Any]:
    document: dict[str, Any] = {
        "success": False,
        "type": type(error).__name__,
        "error": str(error),
    }
    if isinstance(error, ParseError) and error.line is not None:
        document["line"] = error.line
        document["column"] = error.column
    if isinstance(error, ValidationError):
        document["report"] = [issue.to_dict() for issue in error.report]
    return document


def main(argv: Sequence[str] | None = None) -> int:
    """
    コマンドを実行する

    Args:
        argv: 引数（省略時は sys.argv[1:]）

    Returns:
        終了コード
    """
    try:
        args = build_parser().parse_args(argv)
        configure_logging(args.log_level or get_settings().log_level)
        logger.info(f"Running command {args.command}")
        rng = np.random.default_rng(args.seed)

        if args.command == "dim":
            return cmd_dim(args)
        elif args.command == "glue":
            return cmd_glue(args)
        elif args.command == "verify-moves":
            return cmd_verify_moves(args, rng)
        elif args.command == "modularity":
            return cmd_modularity(args)
        elif args.command == "catalog":
            return cmd_catalog(args)
        raise InvalidArgument(f"unknown command {args.command}")
    except BlocksError as e:
        logger.error(f"{type(e).__name__}: {e}")
        sys.stderr.write(render_json(_error_document(e)))
        return EXIT_INPUT


def run() -> None:
    """console_scripts のエントリーポイント"""
    sys.exit(main())

