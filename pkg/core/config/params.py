"""问题参数校验与二叉分裂树的下标运算"""
from dataclasses import dataclass, field
from typing import Any, Dict, Tuple

from ..errors import ParameterError
from ..utils.logger import logger

FINAL_SCALES = ("logk", "logn")
LEMMA_SAFE_C = 16


def is_power_of_two(value: int) -> bool:
    return value >= 1 and (value & (value - 1)) == 0


def next_power_of_two(value: int) -> int:
    """不小于 value 的最小 2 的幂"""
    if value <= 1:
        return 1
    return 1 << (value - 1).bit_length()


def log2_exact(value: int) -> int:
    """2 的幂的以 2 为底对数"""
    return value.bit_length() - 1


@dataclass(frozen=True)
class ProblemParams:
    """校验后的实例参数及其派生的层级结构"""
    n: int
    k: int
    C: int
    Cprime: int
    Ctil: int
    seed: int
    requested_n: int = 0
    requested_k: int = 0
    final_scale: str = "logk"

    @property
    def log_n(self) -> int:
        return log2_exact(self.n)

    @property
    def log_k(self) -> int:
        return log2_exact(self.k)

    @property
    def ell_min(self) -> int:
        return self.log_k

    @property
    def ell_max(self) -> int:
        return self.log_n

    @property
    def levels(self) -> range:
        """带有 C·k 测试块的非末层：ell_min … ell_max-1"""
        return range(self.ell_min, self.ell_max)

    @property
    def block_size(self) -> int:
        return self.C * self.k

    @property
    def block_bits(self) -> int:
        return log2_exact(self.block_size)

    @property
    def final_width(self) -> int:
        return 2 * self.k

    @property
    def final_bits(self) -> int:
        return log2_exact(self.final_width)

    @property
    def num_final_sequences(self) -> int:
        """末层序列数 F = C'·max(1, log2 k)；final_scale=logn 时为 C'·log2 n"""
        if self.final_scale == "logn":
            return self.Cprime * max(1, self.log_n)
        return self.Cprime * max(1, self.log_k)

    def with_seed(self, seed: int) -> "ProblemParams":
        """返回仅种子不同的参数副本"""
        return ProblemParams(
            n=self.n, k=self.k, C=self.C, Cprime=self.Cprime, Ctil=self.Ctil,
            seed=seed & 0xFFFFFFFFFFFFFFFF, requested_n=self.requested_n,
            requested_k=self.requested_k, final_scale=self.final_scale,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "C": self.C,
            "Cprime": self.Cprime,
            "Ctil": self.Ctil,
            "seed": self.seed,
            "requested_n": self.requested_n,
            "requested_k": self.requested_k,
            "final_scale": self.final_scale,
            "ell_min": self.ell_min,
            "ell_max": self.ell_max,
            "num_final_sequences": self.num_final_sequences,
            "t": num_tests(self),
        }


def new_params(n: int, k: int, C: int = 16, Cprime: int = 3, Ctil: int = 1,
               seed: int = 0, final_scale: str = "logk") -> ProblemParams:
    """
    校验参数，将 n、k 向上取整到 2 的幂，并保证 k ≤ n/2

    Args:
        n: 物品数量（n ≥ 2）
        k: 缺陷数上界（k ≥ 1）
        C: 每层测试倍数，需为 ≥ 4 的 2 的幂
        Cprime: 末层序列倍数
        Ctil: 每层重复次数
        seed: 64 位种子
        final_scale: 末层序列规模，logk 或 logn

    Returns:
        ProblemParams: 记录请求值与生效值的参数
    """
    if k <= 0:
        raise ParameterError(f"k 必须为正整数，收到 {k}")
    if n < 2:
        raise ParameterError(f"n 必须至少为 2，收到 {n}")
    if not is_power_of_two(C):
        raise ParameterError(f"C 必须为 2 的幂，收到 {C}")
    if C < 4:
        raise ParameterError(f"C 必须至少为 4，收到 {C}")
    if Cprime < 1:
        raise ParameterError(f"Cprime 必须至少为 1，收到 {Cprime}")
    if Ctil < 1:
        raise ParameterError(f"Ctil 必须至少为 1，收到 {Ctil}")
    if final_scale not in FINAL_SCALES:
        raise ParameterError(f"final_scale 必须为 {FINAL_SCALES} 之一，收到 {final_scale}")

    effective_n = next_power_of_two(n)
    effective_k = min(next_power_of_two(k), effective_n // 2)

    if effective_n != n or effective_k != k:
        logger.warning(f"参数取整: n {n} -> {effective_n}, k {k} -> {effective_k}")
    if C < LEMMA_SAFE_C:
        logger.warning(f"C={C} 小于 {LEMMA_SAFE_C}，部分引理的前提条件不再同时成立")

    return ProblemParams(
        n=effective_n, k=effective_k, C=C, Cprime=Cprime, Ctil=Ctil,
        seed=seed & 0xFFFFFFFFFFFFFFFF, requested_n=n, requested_k=k,
        final_scale=final_scale,
    )


def num_tests(params: ProblemParams) -> int:
    """测试总数 t = C̃·C·k·log2(n/k) + 2k·F"""
    levels = params.ell_max - params.ell_min
    return params.Ctil * params.block_size * levels + params.final_width * params.num_final_sequences


@dataclass(frozen=True, order=True)
class TreeNode:
    """树节点 (level, index)，对应第 level 层的第 index 个分组"""
    level: int
    index: int

    def children(self) -> Tuple["TreeNode", "TreeNode"]:
        return TreeNode(self.level + 1, 2 * self.index), TreeNode(self.level + 1, 2 * self.index + 1)

    def parent(self) -> "TreeNode":
        if self.level == 0:
            raise ParameterError("根节点没有父节点")
        return TreeNode(self.level - 1, self.index // 2)


def _check_node(node: TreeNode, params: ProblemParams):
    if not 0 <= node.level <= params.ell_max:
        raise ParameterError(f"层号 {node.level} 超出范围 [0, {params.ell_max}]")
    if not 0 <= node.index < (1 << node.level):
        raise ParameterError(f"节点下标 {node.index} 超出第 {node.level} 层范围")


def group_of(node: TreeNode, params: ProblemParams) -> range:
    """
    节点对应的物品区间 [j·n/2^ℓ, (j+1)·n/2^ℓ)

    Args:
        node: 树节点
        params: 问题参数

    Returns:
        range: 物品下标区间
    """
    _check_node(node, params)
    width = params.n >> node.level
    return range(node.index * width, (node.index + 1) * width)


def ancestor_node(item: int, level: int, params: ProblemParams) -> TreeNode:
    """物品在指定层的祖先节点，group_of 的逆运算"""
    if not 0 <= item < params.n:
        raise ParameterError(f"物品下标 {item} 超出范围 [0, {params.n})")
    if not params.ell_min <= level <= params.ell_max:
        raise ParameterError(f"层号 {level} 超出范围 [{params.ell_min}, {params.ell_max}]")
    return TreeNode(level, item >> (params.log_n - level))
