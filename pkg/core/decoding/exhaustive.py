from itertools import combinations
from typing import List, Tuple

import numpy as np

from ..assignments.base_assignment import BaseAssignment
from ..errors import ParameterError
from ..outcomes.outcomes import Outcomes

MAX_ITEMS = 32
MAX_K = 4


def item_signatures(assignment: BaseAssignment) -> List[int]:
    """每个物品所在测试的集合，以逻辑测试下标的位掩码表示"""
    params = assignment.params
    layout = assignment.layout
    items = np.arange(params.n, dtype=np.int64)
    signatures = [0] * params.n
    for level in params.levels:
        nodes = items >> (params.log_n - level)
        for rep in range(params.Ctil):
            seg = layout.level_segment(level, rep)
            slots = assignment.node_slots(level, rep, nodes)
            for item in range(params.n):
                signatures[item] |= 1 << (seg.start + int(slots[item]))
    for seq in range(params.num_final_sequences):
        seg = layout.final_segment(seq)
        slots = assignment.final_slots(seq, items)
        for item in range(params.n):
            signatures[item] |= 1 << (seg.start + int(slots[item]))
    return signatures


def exhaustive_consistent(assignment: BaseAssignment, outcomes: Outcomes, k: int) -> List[Tuple[int, ...]]:
    """
    枚举所有大小不超过 k、模拟结果与给定结果完全一致的物品集合

    Args:
        assignment: 测试分配（n ≤ 32）
        outcomes: 测试结果
        k: 集合大小上界（k ≤ 4）

    Returns:
        List[Tuple[int, ...]]: 按大小、再按字典序排列的一致集合
    """
    params = assignment.params
    if params.n > MAX_ITEMS or k > MAX_K or k < 0:
        raise ParameterError(f"穷举仅支持 n ≤ {MAX_ITEMS}、0 ≤ k ≤ {MAX_K}，收到 n={params.n}, k={k}")
    assignment.layout.require_same(outcomes.layout)

    target = 0
    for index in np.flatnonzero(outcomes.to_bool_array()):
        target |= 1 << int(index)

    signatures = item_signatures(assignment)
    # 一致集合中的物品，其全部测试必为阳性
    candidates = [item for item, sig in enumerate(signatures) if sig & ~target == 0]

    consistent = []
    for size in range(k + 1):
        for subset in combinations(candidates, size):
            covered = 0
            for item in subset:
                covered |= signatures[item]
            if covered == target:
                consistent.append(subset)
    return consistent
