from abc import ABC, abstractmethod
from typing import Any, Dict

import numpy as np

from ..config.params import ProblemParams
from .layout import TestLayout


class BaseAssignment(ABC):
    """测试分配基类：(层, 重复, 节点) 与 (末层序列, 物品) 到块内测试槽位的映射"""

    def __init__(self, params: ProblemParams):
        self.params = params
        self.layout = TestLayout.from_params(params)

    @property
    @abstractmethod
    def variant(self) -> str:
        """变体名称"""
        pass

    @abstractmethod
    def node_slots(self, level: int, rep: int, nodes: np.ndarray) -> np.ndarray:
        """
        获取节点在 (level, rep) 块中的测试槽位

        Args:
            level: 层号，ell_min ≤ level < ell_max
            rep: 重复序号
            nodes: 节点下标数组

        Returns:
            np.ndarray: [0, C·k) 内的槽位
        """
        pass

    @abstractmethod
    def final_slots(self, seq: int, items: np.ndarray) -> np.ndarray:
        """获取物品在第 seq 个末层序列中的槽位，取值 [0, 2k)"""
        pass

    @property
    @abstractmethod
    def storage_bits(self) -> int:
        """分配本身占用的存储（比特）"""
        pass

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        """设计转储"""
        pass

    def node_test(self, level: int, rep: int, node: int) -> int:
        """单个节点对应的全局测试下标"""
        seg = self.layout.level_segment(level, rep)
        slot = int(self.node_slots(level, rep, np.array([node], dtype=np.int64))[0])
        return seg.start + slot

    def final_test(self, seq: int, item: int) -> int:
        """单个物品在末层序列中的全局测试下标"""
        seg = self.layout.final_segment(seq)
        slot = int(self.final_slots(seq, np.array([item], dtype=np.int64))[0])
        return seg.start + slot

    @property
    def num_tests(self) -> int:
        return self.layout.num_tests
