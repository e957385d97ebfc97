"""
Contraction planner

内部辺を1本ずつ消去する貪欲な縮約順序
"""

import logging

from blocks.blocks_engine.models import ContractionPlan, ContractionStep, StepKind
from blocks.surface_model.models import DecompositionGraph

logger = logging.getLogger(__name__)


def plan_contraction(d: DecompositionGraph, rank: int) -> ContractionPlan:
    """
    各ステップで生成される中間テンソルが最小になる辺から消去する

    コストは中間テンソルに残る内部辺インデックスの範囲の積 |Δ|^k。
    同コストなら辺インデックスの小さい方を選ぶので、計画は決定的。
    |Δ| ≥ 2 なら合計コストは全列挙の |Δ|^E 以下。|Δ| = 1 のときだけ
    合計は E になり、全列挙の 1 を上回る。

    Args:
        d: 分解グラフ
        rank: ラベル数 |Δ|

    Returns:
        すべての内部辺を1回ずつ消去する ContractionPlan
    """
    parent = list(range(len(d.atoms)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    live: dict[int, set[int]] = {a: set() for a in range(len(d.atoms))}
    for index, (u, v) in enumerate(d.internal_edges):
        live[u.atom].add(index)
        live[v.atom].add(index)

    remaining = set(range(len(d.internal_edges)))
    steps: list[ContractionStep] = []
    while remaining:
        best: tuple[int, int, StepKind, set[int]] | None = None
        for edge in sorted(remaining):
            u, v = d.internal_edges[edge]
            tu, tv = find(u.atom), find(v.atom)
            if tu == tv:
                kind, result = StepKind.TRACE, live[tu] - {edge}
            else:
                kind, result = StepKind.MERGE, (live[tu] | live[tv]) - {edge}
            cost = rank ** len(result)
            if best is None or cost < best[0]:
                best = (cost, edge, kind, result)

        assert best is not None
        cost, edge, kind, result = best
        u, v = d.internal_edges[edge]
        tu, tv = find(u.atom), find(v.atom)
        if kind is StepKind.MERGE:
            root, child = min(tu, tv), max(tu, tv)
            parent[child] = root
            del live[child]
            live[root] = result
        else:
            live[tu] = result
        remaining.discard(edge)
        steps.append(ContractionStep(edge=edge, kind=kind, cost=cost))
        logger.debug(f"Plan step: {kind.value} edge {edge}, cost {cost}")

    plan = ContractionPlan(rank=rank, n_edges=len(d.internal_edges), steps=tuple(steps))
    logger.info(
        f"Planned {len(steps)} eliminations: cost {plan.total_cost} (naive {plan.naive_cost})"
    )
    return plan
