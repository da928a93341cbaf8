import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from ..assignments.base_assignment import BaseAssignment
from ..config.params import ProblemParams
from ..errors import LayoutMismatchError
from ..outcomes.outcomes import Outcomes
from ..utils.logger import logger


@dataclass
class DecodeResult:
    """译码结果及计数信息"""
    estimate: np.ndarray
    pd_per_level: List[int]
    nodes_visited: int
    n_total: int
    n_leaf_pd: int
    decode_ns: int
    leaf_pd: np.ndarray = field(repr=False, default_factory=lambda: np.zeros(0, dtype=np.int64))
    # 仅在提供真实缺陷集合时填充
    nondefective_per_level: Optional[List[int]] = None
    n_total_defective: Optional[int] = None
    n_total_nondefective: Optional[int] = None
    n_leaf_nondefective: Optional[int] = None

    @property
    def reached_nondefective(self) -> Optional[int]:
        """所有层（含 ell_min）上进入 PD 集合的非缺陷节点总数"""
        if self.nondefective_per_level is None:
            return None
        return sum(self.nondefective_per_level)

    def estimate_list(self) -> List[int]:
        return [int(i) for i in self.estimate]

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "estimate": self.estimate_list(),
            "pd_per_level": list(self.pd_per_level),
            "nodes_visited": self.nodes_visited,
            "n_total": self.n_total,
            "n_leaf_pd": self.n_leaf_pd,
            "decode_ns": self.decode_ns,
        }
        if self.nondefective_per_level is not None:
            data["n_total_defective"] = self.n_total_defective
            data["n_total_nondefective"] = self.n_total_nondefective
            data["n_leaf_nondefective"] = self.n_leaf_nondefective
        return data


def _expand_children(nodes: np.ndarray) -> np.ndarray:
    # 子节点 2j、2j+1 交错写入，升序保持不变
    children = np.empty(2 * nodes.size, dtype=np.int64)
    children[0::2] = 2 * nodes
    children[1::2] = 2 * nodes + 1
    return children


def decode(assignment: BaseAssignment, outcomes: Outcomes, params: Optional[ProblemParams] = None,
           truth=None) -> DecodeResult:
    """
    二叉分裂译码

    从 ell_min 层的全部节点开始，逐层保留 C̃ 个测试均为阳性的节点并展开其两个子节点；
    到达叶层后，剔除在任一末层序列中落入阴性测试的物品。

    Args:
        assignment: 测试分配
        outcomes: 同一分配下的测试结果
        params: 问题参数，给出时必须与分配一致
        truth: 真实缺陷集合（仅模拟时可用），用于拆分缺陷/非缺陷节点计数

    Returns:
        DecodeResult: 估计集合与计数信息

    Raises:
        LayoutMismatchError: 结果布局与分配不一致
    """
    if params is None:
        params = assignment.params
    elif params != assignment.params:
        raise LayoutMismatchError("译码参数与测试分配的参数不一致")
    assignment.layout.require_same(outcomes.layout)
    layout = assignment.layout

    start_ns = time.perf_counter_ns()

    pd_per_level = [0] * (params.ell_max + 1)
    frontier = np.arange(1 << params.ell_min, dtype=np.int64)
    pd_per_level[params.ell_min] = frontier.size
    nodes_visited = frontier.size
    visited_levels = [frontier]

    for level in params.levels:
        survivors = frontier
        for rep in range(params.Ctil):
            if survivors.size == 0:
                break
            slots = assignment.node_slots(level, rep, survivors)
            survivors = survivors[outcomes.bits_at(layout.level_segment(level, rep), slots)]
        frontier = _expand_children(survivors)
        pd_per_level[level + 1] = frontier.size
        nodes_visited += frontier.size
        if truth is not None:
            visited_levels.append(frontier)

    leaf_pd = frontier
    estimate = leaf_pd
    for seq in range(params.num_final_sequences):
        if estimate.size == 0:
            break
        slots = assignment.final_slots(seq, estimate)
        estimate = estimate[outcomes.bits_at(layout.final_segment(seq), slots)]

    decode_ns = time.perf_counter_ns() - start_ns

    result = DecodeResult(
        estimate=estimate,
        pd_per_level=pd_per_level,
        nodes_visited=int(nodes_visited),
        n_total=int(nodes_visited - (1 << params.ell_min)),
        n_leaf_pd=int(leaf_pd.size),
        decode_ns=int(decode_ns),
        leaf_pd=leaf_pd,
    )
    if truth is not None:
        _split_by_truth(result, visited_levels, truth, params)

    logger.debug(f"译码完成: 估计 {estimate.size} 个缺陷, PD 叶节点 {result.n_leaf_pd}, "
                 f"访问节点 {result.nodes_visited}, 耗时 {decode_ns} ns")
    return result


def _split_by_truth(result: DecodeResult, visited_levels: List[np.ndarray], truth,
                    params: ProblemParams):
    items = np.asarray(truth, dtype=np.int64).reshape(-1)
    nondefective = [0] * (params.ell_max + 1)
    defective_beyond_min = 0
    for offset, frontier in enumerate(visited_levels):
        level = params.ell_min + offset
        ancestors = np.unique(items >> (params.log_n - level))
        defective = int(np.isin(frontier, ancestors, assume_unique=True).sum())
        nondefective[level] = int(frontier.size) - defective
        if level > params.ell_min:
            defective_beyond_min += defective
    result.nondefective_per_level = nondefective
    result.n_total_defective = defective_beyond_min
    result.n_total_nondefective = result.n_total - defective_beyond_min
    result.n_leaf_nondefective = nondefective[params.ell_max]
