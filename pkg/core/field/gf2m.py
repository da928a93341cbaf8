"""
GF(2^m) 运算（1 ≤ m ≤ 32）

域元素以整数位掩码表示，第 i 位为 x^i 的系数。标量乘法为移位异或后按模多项式约化；
向量化乘法在 m ≤ 16 时查对数/反对数表，更大的 m 退回到按位移位异或。
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..errors import ParameterError

MAX_DEGREE = 32
LOG_TABLE_MAX_DEGREE = 16

# 各次数的低重量不可约多项式，只列出 x^m 以下的项
IRREDUCIBLE_TERMS: Dict[int, Tuple[int, ...]] = {
    1: (0,),
    2: (1, 0),
    3: (1, 0),
    4: (1, 0),
    5: (2, 0),
    6: (1, 0),
    7: (1, 0),
    8: (4, 3, 1, 0),
    9: (1, 0),
    10: (3, 0),
    11: (2, 0),
    12: (3, 0),
    13: (4, 3, 1, 0),
    14: (5, 0),
    15: (1, 0),
    16: (5, 3, 1, 0),
    17: (3, 0),
    18: (3, 0),
    19: (5, 2, 1, 0),
    20: (3, 0),
    21: (2, 0),
    22: (1, 0),
    23: (5, 0),
    24: (4, 3, 1, 0),
    25: (3, 0),
    26: (4, 3, 1, 0),
    27: (5, 2, 1, 0),
    28: (1, 0),
    29: (2, 0),
    30: (1, 0),
    31: (3, 0),
    32: (7, 3, 2, 0),
}


def modulus_for(m: int) -> int:
    """模多项式表中次数为 m 的条目（位掩码，含 x^m 项）"""
    value = 1 << m
    for exponent in IRREDUCIBLE_TERMS[m]:
        value |= 1 << exponent
    return value


@dataclass(frozen=True)
class Gf2mField:
    """有限域 GF(2^m)"""
    m: int
    modulus: int

    @property
    def mask(self) -> int:
        return (1 << self.m) - 1

    @property
    def order(self) -> int:
        return 1 << self.m

    def to_dict(self):
        return {"m": self.m, "modulus": f"0x{self.modulus:x}"}


@lru_cache(maxsize=None)
def field_new(m: int) -> Gf2mField:
    """
    按次数取出内置模多项式构造域

    Args:
        m: 域次数，1 ≤ m ≤ 32

    Returns:
        Gf2mField: 有限域

    Raises:
        ParameterError: m 超出范围
    """
    if not isinstance(m, int) or not 1 <= m <= MAX_DEGREE:
        raise ParameterError(f"域次数 m 必须在 [1, {MAX_DEGREE}] 内，收到 {m}")
    return Gf2mField(m=m, modulus=modulus_for(m))


class FieldOpCounter:
    """域乘法计数器，gf_mul / gf_mul_array 每执行一次乘法累加一次"""

    def __init__(self):
        self.multiplications = 0
        self.evaluations = 0

    def add_multiplications(self, count: int):
        self.multiplications += count

    def add_evaluations(self, count: int):
        self.evaluations += count

    def reset(self):
        self.multiplications = 0
        self.evaluations = 0


def gf_mul(field: Gf2mField, a: int, b: int, counter: Optional[FieldOpCounter] = None) -> int:
    """域内乘法：无进位乘积按模多项式约化；输入先截断到 m 位"""
    if counter is not None:
        counter.add_multiplications(1)
    a &= field.mask
    b &= field.mask
    top = 1 << field.m
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= field.modulus
    return result


def _mul_shift_xor(field: Gf2mField, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """按位移位异或的向量化乘法，只循环到 b 的最高置位；a、b 已截断到 m 位"""
    a, b = np.broadcast_arrays(a, b)
    a = a.copy()
    result = np.zeros(a.shape, dtype=np.uint64)
    width = int(b.max()).bit_length() if b.size else 0
    top = np.uint64(1 << field.m)
    modulus = np.uint64(field.modulus)
    one = np.uint64(1)
    zero = np.uint64(0)
    for bit in range(width):
        take = ((b >> np.uint64(bit)) & one).astype(bool)
        result ^= np.where(take, a, zero)
        a = a << one
        a ^= np.where((a & top) != zero, modulus, zero)
    return result


def _prime_factors(value: int) -> List[int]:
    factors = []
    p = 2
    while p * p <= value:
        if value % p == 0:
            factors.append(p)
            while value % p == 0:
                value //= p
        p += 1
    if value > 1:
        factors.append(value)
    return factors


def primitive_element(field: Gf2mField) -> int:
    """
    乘法群的最小生成元

    Args:
        field: 有限域（模多项式必须不可约）

    Returns:
        int: 阶为 2^m - 1 的最小元素

    Raises:
        ParameterError: 不存在生成元（模多项式可约）
    """
    group = field.order - 1
    factors = _prime_factors(group)
    for g in range(min(2, field.mask), field.order):
        if all(gf_pow(field, g, group // p) != 1 for p in factors):
            return g
    raise ParameterError(f"模多项式 0x{field.modulus:x} 下不存在乘法群生成元")


@lru_cache(maxsize=None)
def log_tables(field: Gf2mField) -> Tuple[np.ndarray, np.ndarray]:
    """
    对数/反对数表，仅用于 m ≤ LOG_TABLE_MAX_DEGREE

    Args:
        field: 有限域

    Returns:
        Tuple[np.ndarray, np.ndarray]: (exp, log)。exp[i] = g^i，长度为 2(2^m - 1)，
        两个对数之和可直接索引；log[a] 为 a 的离散对数，log[0] 无意义
    """
    if field.m > LOG_TABLE_MAX_DEGREE:
        raise ParameterError(f"对数表只支持 m ≤ {LOG_TABLE_MAX_DEGREE}，收到 m={field.m}")
    group = field.order - 1
    g = primitive_element(field)
    powers = np.ones(1, dtype=np.uint64)
    # 每轮把已知的 g^0..g^(s-1) 乘以 g^s，长度翻倍
    while powers.size < group:
        step = np.uint64(gf_pow(field, g, int(powers.size)))
        powers = np.concatenate([powers, _mul_shift_xor(field, powers, step)])
    powers = powers[:group]
    log = np.zeros(field.order, dtype=np.int64)
    log[powers.astype(np.int64)] = np.arange(group, dtype=np.int64)
    exp = np.concatenate([powers, powers])
    exp.setflags(write=False)
    log.setflags(write=False)
    return exp, log


def gf_mul_array(field: Gf2mField, a, b, counter: Optional[FieldOpCounter] = None) -> np.ndarray:
    """gf_mul 的向量化版本，a 与 b 按 numpy 规则广播"""
    a = np.asarray(a, dtype=np.uint64) & np.uint64(field.mask)
    b = np.asarray(b, dtype=np.uint64) & np.uint64(field.mask)
    a, b = np.broadcast_arrays(a, b)
    if counter is not None:
        counter.add_multiplications(int(a.size))
    if field.m > LOG_TABLE_MAX_DEGREE:
        return _mul_shift_xor(field, a, b)
    exp, log = log_tables(field)
    ia = a.astype(np.int64)
    ib = b.astype(np.int64)
    product = exp[log[ia] + log[ib]]
    return np.where((ia == 0) | (ib == 0), np.uint64(0), product).astype(np.uint64)


def gf_pow(field: Gf2mField, a: int, exponent: int) -> int:
    result = 1
    base = a & field.mask
    while exponent > 0:
        if exponent & 1:
            result = gf_mul(field, result, base)
        base = gf_mul(field, base, base)
        exponent >>= 1
    return result


def gf_inv(field: Gf2mField, a: int) -> int:
    """乘法逆元 a^(2^m - 2)"""
    if a & field.mask == 0:
        raise ZeroDivisionError("零元没有乘法逆元")
    return gf_pow(field, a, field.order - 2)


def _poly_degree(p: int) -> int:
    return p.bit_length() - 1


def poly_mod(a: int, b: int) -> int:
    """GF(2)[x] 上的多项式取余"""
    if b == 0:
        raise ZeroDivisionError("除数多项式为零")
    deg_b = _poly_degree(b)
    while a and _poly_degree(a) >= deg_b:
        a ^= b << (_poly_degree(a) - deg_b)
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def poly_mulmod(a: int, b: int, modulus: int) -> int:
    result = 0
    deg = _poly_degree(modulus)
    a = poly_mod(a, modulus)
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a >> deg & 1:
            a ^= modulus
    return result


def is_irreducible(poly: int) -> bool:
    """
    Ben-Or 不可约判定：对 1 ≤ i ≤ deg/2，gcd(f, x^(2^i) - x) = 1

    Args:
        poly: GF(2)[x] 上的多项式位掩码

    Returns:
        bool: 是否不可约
    """
    degree = _poly_degree(poly)
    if degree < 1:
        return False
    if degree == 1:
        return True
    x = 0b10
    power = x
    for _ in range(degree // 2):
        power = poly_mulmod(power, power, poly)
        if poly_gcd(poly, power ^ x) != 1:
            return False
    return True


def is_irreducible_bruteforce(poly: int) -> bool:
    """试除所有次数 ≤ deg/2 的多项式"""
    degree = _poly_degree(poly)
    if degree < 1:
        return False
    for divisor in range(2, 1 << (degree // 2 + 1)):
        if poly_mod(poly, divisor) == 0:
            return False
    return True
