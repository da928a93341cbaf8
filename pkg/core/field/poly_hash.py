from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..errors import ParameterError
from ..utils.prng import SplitMix64
from .gf2m import FieldOpCounter, Gf2mField, gf_mul, gf_mul_array


@dataclass(frozen=True)
class PolyHash:
    """GF(2^m) 上次数 < r 的随机多项式，输出截断到低 out_bits 位；coeffs[0] 为常数项"""
    field: Gf2mField
    coeffs: Tuple[int, ...]
    out_bits: int

    @property
    def r(self) -> int:
        return len(self.coeffs)

    @property
    def storage_bits(self) -> int:
        return self.r * self.field.m

    def evaluate(self, x: int, counter: Optional[FieldOpCounter] = None) -> int:
        """Horner 求值：r-1 次乘法"""
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = gf_mul(self.field, acc, x, counter) ^ c
        if counter is not None:
            counter.add_evaluations(1)
        return acc & ((1 << self.out_bits) - 1)

    def evaluate_many(self, xs, counter: Optional[FieldOpCounter] = None) -> np.ndarray:
        """对一批点向量化求值"""
        points = np.asarray(xs, dtype=np.uint64)
        acc = np.full(points.shape, self.coeffs[-1], dtype=np.uint64)
        for c in reversed(self.coeffs[:-1]):
            acc = gf_mul_array(self.field, acc, points, counter) ^ np.uint64(c)
        if counter is not None:
            counter.add_evaluations(int(points.size))
        return acc & np.uint64((1 << self.out_bits) - 1)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m": self.field.m,
            "modulus": f"0x{self.field.modulus:x}",
            "out_bits": self.out_bits,
            "coeffs": [f"{c:x}" for c in self.coeffs],
        }


def hash_new(field: Gf2mField, r: int, out_bits: int, stream: SplitMix64) -> PolyHash:
    """
    从流中抽取 r 个均匀系数构造多项式哈希

    Args:
        field: 有限域
        r: 独立度（系数个数）
        out_bits: 输出位宽，1 ≤ out_bits ≤ m
        stream: 伪随机流，调用后状态前进 r 步

    Returns:
        PolyHash: 多项式哈希
    """
    if r < 1:
        raise ParameterError(f"独立度 r 必须至少为 1，收到 {r}")
    if not 1 <= out_bits <= field.m:
        raise ParameterError(f"输出位宽必须在 [1, {field.m}] 内，收到 {out_bits}")
    coeffs = tuple(int(c) for c in stream.uniform_bits(r, field.m))
    return PolyHash(field=field, coeffs=coeffs, out_bits=out_bits)


def hash_eval(h: PolyHash, x: int, counter: Optional[FieldOpCounter] = None) -> int:
    return h.evaluate(x, counter)
