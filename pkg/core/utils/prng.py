"""
SplitMix64 伪随机数流

流是计数器式的：以 s 为种子的流，第 i 个输出为 mix64(s + (i+1)·γ)，
因此既可以逐个抽取，也可以按下标随机访问或整块向量化生成，结果逐位一致。
"""
from typing import Dict

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX_MUL_1 = 0xBF58476D1CE4E5B9
_MIX_MUL_2 = 0x94D049BB133111EB


class StreamTag:
    """子流标签，参与 derive_seed 的混合"""
    LEVEL = 1
    FINAL = 2
    HASH_LEVEL = 3
    HASH_FINAL = 4
    SAFFRON = 5
    TRIAL = 6
    DEFECTIVES = 7
    BLOOM = 8
    MONTE_CARLO = 9


def mix64(z: int) -> int:
    """SplitMix64 输出混合函数（标量版本）"""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX_MUL_1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX_MUL_2) & MASK64
    return z ^ (z >> 31)


def mix64_array(z: np.ndarray) -> np.ndarray:
    """SplitMix64 输出混合函数（向量版本，uint64 乘法按 2^64 回绕）"""
    z = np.asarray(z, dtype=np.uint64)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX_MUL_1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX_MUL_2)
    return z ^ (z >> np.uint64(31))


def derive_seed(seed: int, *keys: int) -> int:
    """
    由主种子和若干整数键派生子流种子

    Args:
        seed: 64 位主种子
        *keys: 子流键，例如 (StreamTag.LEVEL, level, repetition)

    Returns:
        int: 64 位子流种子
    """
    h = mix64(seed & MASK64)
    for key in keys:
        h = mix64((h + GOLDEN_GAMMA * ((int(key) & MASK64) + 1)) & MASK64)
    return h


def splitmix_at(stream_seed: int, indices) -> np.ndarray:
    """按下标随机访问流输出：第 i 个输出为 mix64(seed + (i+1)·γ)"""
    idx = np.asarray(indices, dtype=np.uint64)
    states = (idx + np.uint64(1)) * np.uint64(GOLDEN_GAMMA) + np.uint64(stream_seed & MASK64)
    return mix64_array(states)


class SplitMix64:
    """可复现的 64 位伪随机数流"""

    def __init__(self, seed: int):
        self.seed = seed & MASK64
        self._state = self.seed

    def next(self) -> int:
        """抽取下一个 64 位输出"""
        self._state = (self._state + GOLDEN_GAMMA) & MASK64
        return mix64(self._state)

    def block(self, count: int) -> np.ndarray:
        """
        连续抽取 count 个输出，与逐个调用 next() 的结果逐位一致

        Args:
            count: 输出个数

        Returns:
            np.ndarray: uint64 数组
        """
        if count <= 0:
            return np.zeros(0, dtype=np.uint64)
        values = splitmix_at(self._state, np.arange(count, dtype=np.uint64))
        self._state = (self._state + count * GOLDEN_GAMMA) & MASK64
        return values

    def uniform_bits(self, count: int, bits: int) -> np.ndarray:
        """抽取 count 个 [0, 2^bits) 内的均匀整数（取低位，无取模偏差）"""
        mask = np.uint64((1 << bits) - 1)
        return self.block(count) & mask

    def below(self, bound: int) -> int:
        """抽取 [0, bound) 内的均匀整数，非 2 的幂时使用拒绝采样"""
        if bound <= 0:
            raise ValueError(f"bound 必须为正数: {bound}")
        if bound == 1:
            return 0
        mask = (1 << (bound - 1).bit_length()) - 1
        while True:
            value = self.next() & mask
            if value < bound:
                return value


def sample_defectives(n: int, count: int, seed: int) -> np.ndarray:
    """
    在 [0, n) 中均匀抽取 count 个互不相同的物品（部分 Fisher–Yates 洗牌）

    Args:
        n: 物品总数
        count: 抽取个数
        seed: 64 位种子

    Returns:
        np.ndarray: 升序排列的 int64 数组
    """
    if count < 0 or count > n:
        raise ValueError(f"无法从 {n} 个物品中抽取 {count} 个")
    stream = SplitMix64(seed)
    # 稀疏洗牌：只记录被交换过的位置
    swapped: Dict[int, int] = {}
    chosen = []
    for i in range(count):
        j = i + stream.below(n - i)
        value_j = swapped.get(j, j)
        swapped[j] = swapped.get(i, i)
        chosen.append(value_j)
    return np.array(sorted(chosen), dtype=np.int64)
