"""
二叉分支过程的总后代数

每个节点独立地以概率 q 标记为 1，标记为 1 的节点产生两个子节点。
N 为被触及的节点总数，奇数 n 处 P[N = n] = (1/n)·C(n, (n-1)/2)·(1-q)^((n+1)/2)·q^((n-1)/2)，偶数处为 0。
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import gammaln

from ..errors import ParameterError
from ..utils.prng import StreamTag, derive_seed
from .report import CheckReport

# 超过该值时改用对数二项式系数
EXACT_BINOMIAL_MAX = 60


@dataclass
class BranchPmf:
    """pmf[n] = P[N = n]，pmf[0] 恒为 0"""
    q: float
    pmf: np.ndarray
    tail_mass: float

    @property
    def n_max(self) -> int:
        return self.pmf.size - 1


@dataclass
class BranchSimulation:
    """branching_simulate 的经验分布"""
    q: float
    trials: int
    depth_cap: int
    counts: np.ndarray
    truncated: int

    def empirical_pmf(self, n_max: int) -> np.ndarray:
        pmf = np.zeros(n_max + 1)
        upto = min(n_max + 1, self.counts.size)
        pmf[:upto] = self.counts[:upto] / self.trials
        return pmf


def _log_term(n: int, q: float) -> float:
    half = (n - 1) // 2
    log_binom = gammaln(n + 1) - gammaln(half + 1) - gammaln(n - half + 1)
    return log_binom + (half + 1) * math.log1p(-q) + half * math.log(q) - math.log(n)


def branching_pmf_exact(q: float, n_max: int) -> BranchPmf:
    """
    总后代数的精确分布

    Args:
        q: 标记概率，0 ≤ q < 1/2
        n_max: 计算到的最大 n

    Returns:
        BranchPmf: 精确分布与未计入的尾部质量

    Raises:
        ParameterError: q 不在 [0, 1/2) 内（此时过程不一定灭绝）
    """
    if not 0.0 <= q < 0.5:
        raise ParameterError(f"q 必须在 [0, 1/2) 内，收到 {q}")
    if n_max < 1:
        raise ParameterError(f"n_max 必须至少为 1，收到 {n_max}")

    pmf = np.zeros(n_max + 1)
    if q == 0.0:
        pmf[1] = 1.0
    else:
        for n in range(1, n_max + 1, 2):
            half = (n - 1) // 2
            if n <= EXACT_BINOMIAL_MAX:
                pmf[n] = math.comb(n, half) * (1 - q) ** (half + 1) * q ** half / n
            else:
                pmf[n] = math.exp(_log_term(n, q))
    tail_mass = max(0.0, 1.0 - float(pmf.sum()))
    return BranchPmf(q=q, pmf=pmf, tail_mass=tail_mass)


def branching_simulate(q: float, depth_cap: int, trials: int, seed: int) -> BranchSimulation:
    """
    按代模拟分支过程，所有试验同时推进

    Args:
        q: 标记概率
        depth_cap: 最多模拟的代数，超过后计为截断
        trials: 试验次数
        seed: 64 位种子

    Returns:
        BranchSimulation: 每个 N 值的出现次数与截断次数
    """
    if trials < 1:
        raise ParameterError(f"trials 必须至少为 1，收到 {trials}")
    rng = np.random.default_rng(derive_seed(seed, StreamTag.MONTE_CARLO))
    alive = np.ones(trials, dtype=np.int64)
    total = np.ones(trials, dtype=np.int64)
    for _ in range(depth_cap):
        if not alive.any():
            break
        marked = rng.binomial(alive, q)
        alive = 2 * marked
        total += alive
    truncated = int(np.count_nonzero(alive))
    counts = np.bincount(total)
    return BranchSimulation(q=q, trials=trials, depth_cap=depth_cap, counts=counts, truncated=truncated)


def total_variation(p: np.ndarray, q: np.ndarray) -> float:
    size = max(p.size, q.size)
    a = np.zeros(size)
    b = np.zeros(size)
    a[:p.size] = p
    b[:q.size] = q
    return 0.5 * float(np.abs(a - b).sum())


def branching_bound_check(q: float, n_max: int) -> CheckReport:
    """检查精确分布满足 P[N = n] ≤ 2^-(n-1)"""
    exact = branching_pmf_exact(q, n_max)
    n = np.arange(1, n_max + 1)
    with np.errstate(divide="ignore"):
        log_ratio = np.log(exact.pmf[1:]) + (n - 1) * math.log(2.0)
    worst = float(np.exp(np.max(log_ratio)))
    return CheckReport(
        check="branching-bound",
        bound=1.0,
        observed=worst,
        passed=worst <= 1.0,
        details={"q": q, "n_max": n_max, "tail_mass": exact.tail_mass,
                 "worst_n": int(n[np.argmax(log_ratio)])},
    )


def branching_mc_check(q: float, trials: int, seed: int, n_max: int = 15,
                       threshold: float = 0.01, depth_cap: int = 64,
                       exact: Optional[BranchPmf] = None) -> CheckReport:
    """蒙特卡洛分布与精确分布在 n ≤ n_max 上的总变差距离"""
    if exact is None:
        exact = branching_pmf_exact(q, n_max)
    sim = branching_simulate(q, depth_cap, trials, seed)
    distance = total_variation(sim.empirical_pmf(n_max)[:n_max + 1], exact.pmf[:n_max + 1])
    return CheckReport(
        check="branching-mc",
        bound=threshold,
        observed=distance,
        passed=distance < threshold,
        details={"q": q, "trials": trials, "n_max": n_max, "depth_cap": depth_cap,
                 "truncated": sim.truncated, "truncated_fraction": sim.truncated / trials},
    )
