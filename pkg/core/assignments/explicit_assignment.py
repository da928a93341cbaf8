from typing import Any, Dict, List

import numpy as np

from ..config.params import ProblemParams
from ..errors import ResourceError
from ..utils.codec import pack_u32_base64
from ..utils.logger import logger
from ..utils.prng import SplitMix64, StreamTag, derive_seed
from .base_assignment import BaseAssignment


def slot_dtype(bits: int) -> np.dtype:
    """能容纳 bits 位槽位的最小无符号整数类型"""
    if bits <= 8:
        return np.dtype(np.uint8)
    if bits <= 16:
        return np.dtype(np.uint16)
    return np.dtype(np.uint32)


class ExplicitAssignment(BaseAssignment):
    """完全独立分配：每个节点、每个末层物品的槽位都显式存储"""

    def __init__(self, params: ProblemParams, level_slots: Dict[tuple, np.ndarray],
                 final_slots: List[np.ndarray]):
        super().__init__(params)
        self._level_slots = level_slots
        self._final_slots = final_slots

    @property
    def variant(self) -> str:
        return "explicit"

    def level_array(self, level: int, rep: int) -> np.ndarray:
        return self._level_slots[(level, rep)]

    def final_array(self, seq: int) -> np.ndarray:
        return self._final_slots[seq]

    def node_slots(self, level: int, rep: int, nodes: np.ndarray) -> np.ndarray:
        return self._level_slots[(level, rep)][nodes]

    def final_slots(self, seq: int, items: np.ndarray) -> np.ndarray:
        return self._final_slots[seq][items]

    @property
    def nbytes(self) -> int:
        total = sum(arr.nbytes for arr in self._level_slots.values())
        return total + sum(arr.nbytes for arr in self._final_slots)

    @property
    def storage_bits(self) -> int:
        return 8 * self.nbytes

    def to_dict(self) -> Dict[str, Any]:
        levels = []
        for (level, rep), arr in sorted(self._level_slots.items()):
            levels.append({"level": level, "repetition": rep, "slots": pack_u32_base64(arr)})
        final = [
            {"sequence": seq, "slots": pack_u32_base64(arr)}
            for seq, arr in enumerate(self._final_slots)
        ]
        return {
            "variant": self.variant,
            "params": self.params.to_dict(),
            "layout": self.layout.to_dict(),
            "levels": levels,
            "final": final,
        }


def build_explicit_assignment(params: ProblemParams) -> ExplicitAssignment:
    """
    构建完全独立的测试分配

    每个 (层, 重复) 使用由 (seed, LEVEL, 层, 重复) 派生的独立流，
    每个末层序列使用由 (seed, FINAL, 序列) 派生的独立流；槽位取流输出的低位。

    Args:
        params: 问题参数

    Returns:
        ExplicitAssignment: 显式分配

    Raises:
        ResourceError: 内存不足
    """
    block_dtype = slot_dtype(params.block_bits)
    final_dtype = slot_dtype(params.final_bits)
    try:
        level_slots = {}
        for level in params.levels:
            for rep in range(params.Ctil):
                stream = SplitMix64(derive_seed(params.seed, StreamTag.LEVEL, level, rep))
                level_slots[(level, rep)] = stream.uniform_bits(1 << level, params.block_bits).astype(block_dtype)
        final_slots = []
        for seq in range(params.num_final_sequences):
            stream = SplitMix64(derive_seed(params.seed, StreamTag.FINAL, seq))
            final_slots.append(stream.uniform_bits(params.n, params.final_bits).astype(final_dtype))
    except MemoryError as e:
        raise ResourceError(f"显式分配内存不足 (n={params.n}, k={params.k}): {e}") from e

    assignment = ExplicitAssignment(params, level_slots, final_slots)
    logger.debug(f"显式分配已构建: n={params.n}, k={params.k}, 测试数={assignment.num_tests}, "
                 f"存储={assignment.nbytes} 字节")
    return assignment
