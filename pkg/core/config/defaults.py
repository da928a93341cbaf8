import math
from typing import Dict, Tuple


class ExplicitDefaults:
    """完全独立（显式存储）分配的默认参数"""

    def __init__(self) -> None:
        self.variant: str = "explicit"
        self.C: int = 16
        self.Cprime: int = 3
        self.Ctil: int = 1
        self.final_scale: str = "logk"
        # 影响该变体设计的参数，sweep 只沿这些参数展开
        self.axes: Tuple[str, ...] = ("C", "Cprime", "Ctil")


class HashedDefaults:
    """多项式哈希（低存储）分配的默认参数"""

    def __init__(self) -> None:
        self.variant: str = "hashed"
        self.C: int = 16
        self.Cprime: int = 3
        self.Ctil: int = 2
        self.final_scale: str = "logk"
        self.axes: Tuple[str, ...] = ("C", "Cprime", "Ctil")

    @staticmethod
    def independence(k: int) -> int:
        """默认独立度 r = ceil(log2 k) + 3"""
        return math.ceil(math.log2(max(k, 1))) + 3


class SaffronDefaults:
    """SAFFRON 单例基线的默认参数"""

    def __init__(self) -> None:
        self.variant: str = "saffron"
        self.cb: int = 8
        self.axes: Tuple[str, ...] = ()


class BloomDefaults:
    """Bloom 式直接基线的默认参数"""

    def __init__(self) -> None:
        self.variant: str = "bloom"
        self.Cprime: int = 3
        self.axes: Tuple[str, ...] = ("Cprime",)


class VerifyDefaults:
    """引理校验的默认常量"""

    def __init__(self) -> None:
        self.branching_q: float = 1.0 / 16
        self.branching_n_max: int = 99
        self.branching_mc_trials: int = 1_000_000
        self.branching_tv_n_max: int = 15
        self.branching_tv_threshold: float = 0.01
        self.depth_cap: int = 64
        self.leaf_q: float = 1.0 / 12
        self.leaf_h_max: int = 10
        self.leaf_lambda: float = math.log(2.0)
        self.rwise_m: int = 3
        self.rwise_r: int = 3
        self.mean_n: int = 2 ** 14
        self.mean_k: int = 64
        self.mean_C: int = 16
        self.mean_trials: int = 1000
        self.hashed_n: int = 2 ** 12
        self.hashed_k: int = 32
        self.hashed_C: int = 16
        self.hashed_r: int = 8
        self.hashed_trials: int = 2000


VARIANTS = ("explicit", "hashed", "saffron", "bloom")

_VARIANT_DEFAULTS: Dict[str, type] = {
    "explicit": ExplicitDefaults,
    "hashed": HashedDefaults,
    "saffron": SaffronDefaults,
    "bloom": BloomDefaults,
}


def get_variant_defaults(variant: str):
    """按变体名称获取默认参数对象"""
    if variant not in _VARIANT_DEFAULTS:
        raise KeyError(f"未知变体: {variant}")
    return _VARIANT_DEFAULTS[variant]()
