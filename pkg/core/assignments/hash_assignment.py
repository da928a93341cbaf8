from typing import Any, Dict, List, Optional

import numpy as np

from ..config.defaults import HashedDefaults
from ..config.params import ProblemParams
from ..errors import ParameterError
from ..field.gf2m import FieldOpCounter, field_new
from ..field.poly_hash import PolyHash, hash_new
from ..utils.logger import logger
from ..utils.prng import SplitMix64, StreamTag, derive_seed
from .base_assignment import BaseAssignment


class HashAssignment(BaseAssignment):
    """低存储分配：每个 (层, 重复) 与每个末层序列各由一个 r 独立多项式哈希给出"""

    def __init__(self, params: ProblemParams, r: int, level_hashes: Dict[tuple, PolyHash],
                 final_hashes: List[PolyHash]):
        super().__init__(params)
        self.r = r
        self._level_hashes = level_hashes
        self._final_hashes = final_hashes
        self.counter = FieldOpCounter()

    @property
    def variant(self) -> str:
        return "hashed"

    def level_hash(self, level: int, rep: int) -> PolyHash:
        return self._level_hashes[(level, rep)]

    def final_hash(self, seq: int) -> PolyHash:
        return self._final_hashes[seq]

    def node_slots(self, level: int, rep: int, nodes: np.ndarray) -> np.ndarray:
        return self._level_hashes[(level, rep)].evaluate_many(nodes, self.counter).astype(np.int64)

    def final_slots(self, seq: int, items: np.ndarray) -> np.ndarray:
        return self._final_hashes[seq].evaluate_many(items, self.counter).astype(np.int64)

    @property
    def storage_bits(self) -> int:
        total = sum(h.storage_bits for h in self._level_hashes.values())
        return total + sum(h.storage_bits for h in self._final_hashes)

    def to_dict(self) -> Dict[str, Any]:
        levels = []
        for (level, rep), h in sorted(self._level_hashes.items()):
            levels.append({"level": level, "repetition": rep, **h.to_dict()})
        final = [{"sequence": seq, **h.to_dict()} for seq, h in enumerate(self._final_hashes)]
        return {
            "variant": self.variant,
            "r": self.r,
            "params": self.params.to_dict(),
            "layout": self.layout.to_dict(),
            "levels": levels,
            "final": final,
        }


def build_hash_assignment(params: ProblemParams, r: Optional[int] = None) -> HashAssignment:
    """
    构建多项式哈希分配

    第 ℓ 层的域次数 m = max(ℓ, log2(C·k))，使同层节点落在互不相同的域元素上；
    末层的域次数 m = max(log2 n, log2(2k))。

    Args:
        params: 问题参数
        r: 独立度，默认 ceil(log2 k) + 3

    Returns:
        HashAssignment: 哈希分配
    """
    if r is None:
        r = HashedDefaults.independence(params.k)
    if r < 2:
        raise ParameterError(f"哈希分配要求 r ≥ 2，收到 {r}")

    level_hashes = {}
    for level in params.levels:
        field = field_new(max(level, params.block_bits))
        for rep in range(params.Ctil):
            stream = SplitMix64(derive_seed(params.seed, StreamTag.HASH_LEVEL, level, rep))
            level_hashes[(level, rep)] = hash_new(field, r, params.block_bits, stream)

    final_field = field_new(max(params.log_n, params.final_bits))
    final_hashes = []
    for seq in range(params.num_final_sequences):
        stream = SplitMix64(derive_seed(params.seed, StreamTag.HASH_FINAL, seq))
        final_hashes.append(hash_new(final_field, r, params.final_bits, stream))

    assignment = HashAssignment(params, r, level_hashes, final_hashes)
    logger.debug(f"哈希分配已构建: n={params.n}, k={params.k}, r={r}, "
                 f"存储={assignment.storage_bits} 比特")
    return assignment
