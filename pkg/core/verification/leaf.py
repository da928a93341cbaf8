import math
from dataclasses import dataclass
from typing import List

import numpy as np
from scipy.special import logsumexp

from ..errors import ParameterError
from .report import CheckReport

MAX_HEIGHT = 14


@dataclass
class LeafPmf:
    """高为 h 的完全二叉树中，根到叶路径全为 1 的叶子数 N_h 的分布，pmf[t] = P[N_h = t]"""
    q: float
    h: int
    pmf: np.ndarray

    def tail(self) -> np.ndarray:
        """tail[t] = P[N_h ≥ t]"""
        return np.cumsum(self.pmf[::-1])[::-1]


def leaf_pmf_exact(q: float, h: int) -> LeafPmf:
    """
    卷积递推：D_0 = (1-q, q)，D_h = (1-q)·δ_0 + q·(D_{h-1} ⊛ D_{h-1})

    Args:
        q: 标记概率
        h: 树高，0 ≤ h ≤ 14

    Returns:
        LeafPmf: 支撑为 [0, 2^h] 的分布
    """
    if not 0.0 <= q <= 1.0:
        raise ParameterError(f"q 必须在 [0, 1] 内，收到 {q}")
    if not 0 <= h <= MAX_HEIGHT:
        raise ParameterError(f"树高 h 必须在 [0, {MAX_HEIGHT}] 内，收到 {h}")
    dist = np.array([1.0 - q, q])
    for _ in range(h):
        dist = q * np.convolve(dist, dist)
        dist[0] += 1.0 - q
    return LeafPmf(q=q, h=h, pmf=dist)


def leaf_tail_check(q: float, h_max: int) -> CheckReport:
    """对 0 ≤ h ≤ h_max、1 ≤ t ≤ 2^h 检查 P[N_h ≥ t] ≤ 4^-(h+t)，在对数域比较"""
    worst = -math.inf
    worst_at = (0, 0)
    log4 = math.log(4.0)
    for h in range(h_max + 1):
        tail = leaf_pmf_exact(q, h).tail()[1:]
        t = np.arange(1, tail.size + 1)
        with np.errstate(divide="ignore"):
            log_ratio = np.log(tail) + (h + t) * log4
        index = int(np.argmax(log_ratio))
        if log_ratio[index] > worst:
            worst = float(log_ratio[index])
            worst_at = (h, int(t[index]))
    observed = math.exp(worst) if worst > -math.inf else 0.0
    return CheckReport(
        check="leaf-tail",
        bound=1.0,
        observed=observed,
        passed=observed <= 1.0,
        details={"q": q, "h_max": h_max, "worst_h": worst_at[0], "worst_t": worst_at[1]},
    )


def leaf_mgf(q: float, h: int, lam: float) -> float:
    """E[exp(λ·N_h)]"""
    pmf = leaf_pmf_exact(q, h).pmf
    t = np.arange(pmf.size)
    with np.errstate(divide="ignore"):
        return float(np.exp(logsumexp(np.log(pmf) + lam * t)))


def leaf_mgf_check(q: float, h_max: int, lam: float) -> CheckReport:
    """
    检查每个 h 的 E[exp(λ·N_h)] ≤ 1 + 4^-h，以及 h = 1..h_max 独立副本之和的矩母函数 ≤ 2

    Args:
        q: 标记概率（q ≤ 1/12）
        h_max: 最大树高
        lam: λ ≤ ln 2

    Returns:
        CheckReport: observed 为乘积形式的总矩母函数
    """
    if lam > math.log(2.0) + 1e-12:
        raise ParameterError(f"λ 必须不超过 ln 2，收到 {lam}")
    per_height: List[dict] = []
    product = 1.0
    all_hold = True
    for h in range(1, h_max + 1):
        value = leaf_mgf(q, h, lam)
        bound = 1.0 + 4.0 ** (-h)
        holds = value <= bound
        all_hold = all_hold and holds
        product *= value
        per_height.append({"h": h, "mgf": value, "bound": bound, "pass": holds})
    return CheckReport(
        check="leaf-mgf",
        bound=2.0,
        observed=product,
        passed=all_hold and product <= 2.0,
        details={"q": q, "h_max": h_max, "lambda": lam, "per_height": per_height},
    )
