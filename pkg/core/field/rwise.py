from typing import Optional, Sequence

import numpy as np

from ..errors import ParameterError
from ..verification.report import CheckReport
from .gf2m import field_new, gf_mul_array

# 系数向量枚举上限：2^(m·r) 个多项式
MAX_ENUMERATION_BITS = 20


def verify_rwise(m: int, r: int, points: Optional[Sequence[int]] = None,
                 out_bits: Optional[int] = None) -> CheckReport:
    """
    穷举 GF(2^m) 上全部次数 < r 的多项式，检查在 r 个不同点上的输出元组是否恰好均匀

    截断到 b 位时，每个截断元组应恰好出现 2^((m-b)·r) 次；b = m 时每个元组恰好出现一次。

    Args:
        m: 域次数
        r: 独立度
        points: r 个互不相同的域元素，默认 1..r
        out_bits: 截断位宽 b，默认 m

    Returns:
        CheckReport: observed 为最少与最多出现次数之差
    """
    if r < 1:
        raise ParameterError(f"独立度 r 必须至少为 1，收到 {r}")
    if m * r > MAX_ENUMERATION_BITS:
        raise ParameterError(f"枚举规模 2^{m * r} 超出上限 2^{MAX_ENUMERATION_BITS}")
    field = field_new(m)
    if r > field.order:
        raise ParameterError(f"r={r} 超过域大小 {field.order}")
    if points is None:
        points = [i % field.order for i in range(1, r + 1)]
    points = [int(p) for p in points]
    if len(points) != r:
        raise ParameterError(f"需要恰好 {r} 个求值点，收到 {len(points)}")
    if len(set(points)) != r or any(not 0 <= p < field.order for p in points):
        raise ParameterError(f"求值点必须是互不相同的域元素: {points}")
    b = m if out_bits is None else out_bits
    if not 1 <= b <= m:
        raise ParameterError(f"截断位宽必须在 [1, {m}] 内，收到 {b}")

    total = 1 << (m * r)
    index = np.arange(total, dtype=np.uint64)
    mask = np.uint64(field.mask)
    coeffs = [(index >> np.uint64(m * i)) & mask for i in range(r)]
    out_mask = np.uint64((1 << b) - 1)

    codes = np.zeros(total, dtype=np.uint64)
    for j, x in enumerate(points):
        acc = coeffs[-1].copy()
        for c in reversed(coeffs[:-1]):
            acc = gf_mul_array(field, acc, np.uint64(x)) ^ c
        codes |= (acc & out_mask) << np.uint64(b * j)

    counts = np.bincount(codes.astype(np.int64), minlength=1 << (b * r))
    expected = 1 << ((m - b) * r)
    passed = bool(np.all(counts == expected))
    return CheckReport(
        check="rwise",
        bound=0.0,
        observed=float(counts.max() - counts.min()),
        passed=passed,
        details={
            "m": m,
            "r": r,
            "out_bits": b,
            "points": points,
            "polynomials": total,
            "expected_count": expected,
            "min_count": int(counts.min()),
            "max_count": int(counts.max()),
        },
    )
