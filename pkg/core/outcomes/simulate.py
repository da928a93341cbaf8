from bisect import bisect_left

import numpy as np

from ..assignments.base_assignment import BaseAssignment
from ..config.params import ProblemParams, TreeNode, group_of
from ..errors import ParameterError
from .outcomes import Outcomes, set_slots


def validate_defectives(S, params: ProblemParams) -> np.ndarray:
    """
    校验缺陷集合：升序、无重复、位于 [0, n)、大小不超过 k

    Args:
        S: 缺陷物品下标
        params: 问题参数

    Returns:
        np.ndarray: int64 数组
    """
    items = np.asarray(S, dtype=np.int64).reshape(-1)
    if items.size > params.k:
        raise ParameterError(f"缺陷数 {items.size} 超过上界 k={params.k}")
    if items.size:
        if np.any(items < 0) or np.any(items >= params.n):
            raise ParameterError(f"缺陷物品下标超出范围 [0, {params.n})")
        if np.any(np.diff(items) <= 0):
            raise ParameterError("缺陷集合必须严格升序且不含重复元素")
    return items


def simulate_fast(assignment: BaseAssignment, S) -> Outcomes:
    """
    只为每个缺陷物品写入其祖先节点所在的测试位

    Args:
        assignment: 测试分配
        S: 升序缺陷集合

    Returns:
        Outcomes: 测试结果
    """
    params = assignment.params
    items = validate_defectives(S, params)
    layout = assignment.layout
    words = Outcomes.empty_words(layout)
    if items.size:
        for level in params.levels:
            nodes = items >> (params.log_n - level)
            for rep in range(params.Ctil):
                slots = assignment.node_slots(level, rep, nodes)
                set_slots(words, layout.level_segment(level, rep), slots)
        for seq in range(params.num_final_sequences):
            slots = assignment.final_slots(seq, items)
            set_slots(words, layout.final_segment(seq), slots)
    return Outcomes(words, layout)


def simulate_naive(assignment: BaseAssignment, S) -> Outcomes:
    """
    逐节点、逐物品判断分组是否与缺陷集合相交，只作为小规模的对照

    Args:
        assignment: 测试分配
        S: 升序缺陷集合

    Returns:
        Outcomes: 测试结果
    """
    params = assignment.params
    defectives = [int(i) for i in validate_defectives(S, params)]
    layout = assignment.layout
    words = Outcomes.empty_words(layout)

    def intersects(group: range) -> bool:
        pos = bisect_left(defectives, group.start)
        return pos < len(defectives) and defectives[pos] < group.stop

    for level in params.levels:
        for rep in range(params.Ctil):
            seg = layout.level_segment(level, rep)
            slots = assignment.node_slots(level, rep, np.arange(1 << level, dtype=np.int64))
            positive = [int(slots[j]) for j in range(1 << level)
                        if intersects(group_of(TreeNode(level, j), params))]
            set_slots(words, seg, positive)

    defective_set = set(defectives)
    for seq in range(params.num_final_sequences):
        seg = layout.final_segment(seq)
        slots = assignment.final_slots(seq, np.arange(params.n, dtype=np.int64))
        positive = [int(slots[item]) for item in range(params.n) if item in defective_set]
        set_slots(words, seg, positive)

    return Outcomes(words, layout)
