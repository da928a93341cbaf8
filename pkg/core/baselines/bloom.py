from typing import Any, Dict

import numpy as np

from ..assignments.layout import TestLayout
from ..config.params import ProblemParams
from ..outcomes.outcomes import Outcomes, set_slots
from ..outcomes.simulate import validate_defectives
from ..utils.logger import logger
from ..utils.prng import StreamTag, derive_seed, splitmix_at


class BloomDesign:
    """直接哈希基线：L = C'·log2 n 行，每行 2k 个测试，每个物品每行落入一个测试"""

    def __init__(self, params: ProblemParams):
        self.params = params
        self.num_rows = params.Cprime * max(1, params.log_n)
        self.row_width = params.final_width
        self.layout = TestLayout.from_lengths(
            [("row", -1, row, self.row_width) for row in range(self.num_rows)]
        )
        self._row_seeds = [derive_seed(params.seed, StreamTag.BLOOM, row) for row in range(self.num_rows)]

    @property
    def num_tests(self) -> int:
        return self.num_rows * self.row_width

    @property
    def storage_bits(self) -> int:
        return 64 * self.num_rows

    def row_slots(self, row: int, items) -> np.ndarray:
        draws = splitmix_at(self._row_seeds[row], np.asarray(items, dtype=np.uint64))
        return (draws & np.uint64(self.row_width - 1)).astype(np.int64)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "variant": "bloom",
            "params": self.params.to_dict(),
            "rows": self.num_rows,
            "t": self.num_tests,
        }


def build_bloom(params: ProblemParams) -> BloomDesign:
    design = BloomDesign(params)
    logger.debug(f"Bloom 基线已构建: 行数={design.num_rows}, 测试数={design.num_tests}")
    return design


def bloom_simulate(design: BloomDesign, S) -> Outcomes:
    items = validate_defectives(S, design.params)
    words = Outcomes.empty_words(design.layout)
    if items.size:
        for row in range(design.num_rows):
            set_slots(words, design.layout.segment("row", row), design.row_slots(row, items))
    return Outcomes(words, design.layout)


def bloom_decode(design: BloomDesign, outcomes: Outcomes) -> np.ndarray:
    """
    保留所有测试均为阳性的物品，需要扫描全部 n 个物品

    Returns:
        np.ndarray: 升序的估计集合
    """
    design.layout.require_same(outcomes.layout)
    candidates = np.arange(design.params.n, dtype=np.int64)
    for row in range(design.num_rows):
        if candidates.size == 0:
            break
        slots = design.row_slots(row, candidates)
        candidates = candidates[outcomes.bits_at(design.layout.segment("row", row), slots)]
    return candidates
