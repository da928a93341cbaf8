"""
单例 SAFFRON 基线

每个 bundle 含 2·log2 n 个测试：前半记录被纳入物品的二进制位，后半记录其按位取反。
bundle 中恰好一个缺陷时，前半等于后半的取反，可直接读出该物品。
"""
from typing import Any, Dict

import numpy as np

from ..assignments.layout import TestLayout
from ..config.params import is_power_of_two, log2_exact
from ..errors import ParameterError
from ..outcomes.outcomes import Outcomes
from ..utils.logger import logger
from ..utils.prng import GOLDEN_GAMMA, StreamTag, derive_seed, mix64_array


class SaffronDesign:
    """SAFFRON 设计：bundle 成员关系由伪随机流隐式给出，可随时重算"""

    def __init__(self, n: int, k: int, cb: int, seed: int):
        self.n = n
        self.k = k
        self.cb = cb
        self.seed = seed & 0xFFFFFFFFFFFFFFFF
        self.bits = log2_exact(n)
        self.num_bundles = cb * k * max(1, log2_exact(k))
        self.layout = TestLayout.from_lengths(
            [("bundle", -1, b, 2 * self.bits) for b in range(self.num_bundles)]
        )
        self._bundle_seeds = np.array(
            [derive_seed(self.seed, StreamTag.SAFFRON, b) for b in range(self.num_bundles)],
            dtype=np.uint64,
        )
        self.word_index = np.array([seg.word_start for seg in self.layout.segments], dtype=np.int64)

    @property
    def inclusion_probability(self) -> float:
        return 1.0 / self.k

    @property
    def num_tests(self) -> int:
        return 2 * self.num_bundles * self.bits

    @property
    def item_mask(self) -> int:
        return (1 << self.bits) - 1

    @property
    def storage_bits(self) -> int:
        """只保存各 bundle 的子流种子"""
        return 64 * self.num_bundles

    def membership(self, items) -> np.ndarray:
        """
        bundle × 物品的成员矩阵：物品被纳入当且仅当其流输出的低 log2 k 位全为 0

        Args:
            items: 物品下标数组

        Returns:
            np.ndarray: 形状 (B, len(items)) 的布尔矩阵
        """
        items = np.asarray(items, dtype=np.uint64).reshape(-1)
        states = self._bundle_seeds[:, None] + (items[None, :] + np.uint64(1)) * np.uint64(GOLDEN_GAMMA)
        draws = mix64_array(states)
        return (draws & np.uint64(self.k - 1)) == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "variant": "saffron",
            "n": self.n,
            "k": self.k,
            "cb": self.cb,
            "seed": self.seed,
            "bundles": self.num_bundles,
            "t": self.num_tests,
        }


def build_saffron(n: int, k: int, cb: int = 8, seed: int = 0) -> SaffronDesign:
    """
    构建 SAFFRON 设计：B = cb·k·max(1, log2 k) 个 bundle，纳入概率恰为 1/k

    Args:
        n: 物品数，2 的幂
        k: 缺陷数上界，2 的幂
        cb: bundle 数倍数
        seed: 64 位种子

    Returns:
        SaffronDesign: 设计
    """
    if not is_power_of_two(n) or n < 2:
        raise ParameterError(f"n 必须为至少 2 的 2 的幂，收到 {n}")
    if not is_power_of_two(k) or k > n:
        raise ParameterError(f"k 必须为不超过 n 的 2 的幂，收到 {k}")
    if cb < 1:
        raise ParameterError(f"cb 必须至少为 1，收到 {cb}")
    if log2_exact(n) > 32:
        raise ParameterError(f"bundle 的两半必须放进一个 64 位字，n={n} 过大")
    design = SaffronDesign(n, k, cb, seed)
    logger.debug(f"SAFFRON 设计已构建: B={design.num_bundles}, 测试数={design.num_tests}")
    return design


def _check_items(design: SaffronDesign, S) -> np.ndarray:
    items = np.asarray(S, dtype=np.int64).reshape(-1)
    if items.size and (np.any(items < 0) or np.any(items >= design.n)):
        raise ParameterError(f"缺陷物品下标超出范围 [0, {design.n})")
    if items.size and np.any(np.diff(items) <= 0):
        raise ParameterError("缺陷集合必须严格升序且不含重复元素")
    return items


def saffron_simulate(design: SaffronDesign, S) -> Outcomes:
    """只对缺陷物品计算成员关系并写出每个 bundle 的两个字"""
    items = _check_items(design, S)
    words = Outcomes.empty_words(design.layout)
    if items.size:
        member = design.membership(items)
        values = items.astype(np.uint64)[None, :]
        mask = np.uint64(design.item_mask)
        zero = np.uint64(0)
        first = np.bitwise_or.reduce(np.where(member, values, zero), axis=1)
        second = np.bitwise_or.reduce(np.where(member, ~values & mask, zero), axis=1)
        words[design.word_index] = first | (second << np.uint64(design.bits))
    return Outcomes(words, design.layout)


def saffron_decode(design: SaffronDesign, outcomes: Outcomes) -> np.ndarray:
    """
    逐 bundle 检查前半是否等于后半的取反，成立时读出该物品

    Returns:
        np.ndarray: 升序的译码物品
    """
    design.layout.require_same(outcomes.layout)
    mask = np.uint64(design.item_mask)
    words = outcomes.words[design.word_index]
    first = words & mask
    second = (words >> np.uint64(design.bits)) & mask
    singleton = first == (~second & mask)
    return np.unique(first[singleton].astype(np.int64))


def isolated_defectives(design: SaffronDesign, S) -> np.ndarray:
    """至少在一个 bundle 中单独出现的缺陷物品"""
    items = _check_items(design, S)
    if items.size == 0:
        return items
    member = design.membership(items)
    alone = member.sum(axis=1) == 1
    hits = member[alone].any(axis=0)
    return items[hits]
