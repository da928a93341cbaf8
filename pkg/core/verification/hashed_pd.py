from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np

from ..assignments.hash_assignment import build_hash_assignment
from ..config.params import ProblemParams
from ..decoding.decoder import decode
from ..errors import ParameterError
from ..outcomes.simulate import simulate_fast
from ..utils.logger import logger
from ..utils.prng import StreamTag, derive_seed, sample_defectives
from .report import CheckReport


@dataclass
class LevelStats:
    """单层统计：进入阳性测试的非缺陷 PD 节点数 D 的样本"""
    level: int
    samples: List[int] = field(default_factory=list)
    discarded: int = 0
    survived: int = 0
    exposed: int = 0

    @property
    def mean(self) -> float:
        return float(np.mean(self.samples)) if self.samples else 0.0

    @property
    def variance(self) -> float:
        return float(np.var(self.samples, ddof=1)) if len(self.samples) > 1 else 0.0

    @property
    def survival_rate(self) -> float:
        """非缺陷 PD 节点通过本层全部 C̃ 个测试的比例"""
        return self.survived / self.exposed if self.exposed else 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "level": self.level,
            "samples": len(self.samples),
            "discarded": self.discarded,
            "mean": self.mean,
            "variance": self.variance,
            "survival_rate": self.survival_rate,
        }


def hashed_level_stats(params: ProblemParams, r: int, trials: int, seed: int) -> List[LevelStats]:
    """
    多项式哈希分配下逐层统计非缺陷 PD 节点的存活情况

    第 ℓ 层 PD 节点数超过 4k 的样本被丢弃（只统计满足前提的层）。

    Args:
        params: 问题参数，C̃ 任意
        r: 哈希独立度
        trials: 试验次数
        seed: 64 位种子

    Returns:
        List[LevelStats]: 按层号排列
    """
    stats = {level: LevelStats(level) for level in params.levels}
    cap = 4 * params.k
    for trial in range(trials):
        trial_seed = derive_seed(seed, StreamTag.TRIAL, trial)
        trial_params = params.with_seed(trial_seed)
        defectives = sample_defectives(params.n, params.k, derive_seed(trial_seed, StreamTag.DEFECTIVES))
        assignment = build_hash_assignment(trial_params, r)
        outcomes = simulate_fast(assignment, defectives)
        result = decode(assignment, outcomes, trial_params, truth=defectives)
        for level in params.levels:
            pd = result.pd_per_level[level]
            nondefective = result.nondefective_per_level[level]
            defective = pd - nondefective
            survivors = result.pd_per_level[level + 1] // 2 - defective
            entry = stats[level]
            if pd > cap:
                entry.discarded += 1
                continue
            entry.samples.append(survivors)
            entry.survived += survivors
            entry.exposed += nondefective
    return [stats[level] for level in params.levels]


def hashed_pd_mean_mc(params: ProblemParams, r: int, trials: int, seed: int) -> CheckReport:
    """
    检查 C̃ = 1 时每层进入阳性测试的非缺陷 PD 节点均值 ≤ k/2

    Args:
        params: 问题参数（C ≥ 8，C̃ = 1）
        r: 哈希独立度
        trials: 试验次数
        seed: 64 位种子

    Returns:
        CheckReport: observed 为各层均值的最大值；details 给出 c_var = 方差/k
    """
    if params.C < 8:
        raise ParameterError(f"该检查要求 C ≥ 8，收到 C={params.C}")
    if params.Ctil != 1:
        raise ParameterError(f"该检查要求 C̃ = 1，收到 C̃={params.Ctil}")
    logger.info(f"开始哈希 PD 均值蒙特卡洛: n={params.n}, k={params.k}, r={r}, 试验 {trials} 次")
    levels = hashed_level_stats(params, r, trials, seed)
    bound = params.k / 2
    discarded = sum(entry.discarded for entry in levels)
    if discarded:
        logger.warning(f"共有 {discarded} 个层样本因 PD 节点数超过 4k 被丢弃")
    observed = max((entry.mean for entry in levels if entry.samples), default=0.0)
    c_var = max((entry.variance / params.k for entry in levels), default=0.0)
    return CheckReport(
        check="hashed-pd",
        bound=bound,
        observed=observed,
        passed=observed <= bound,
        details={
            "n": params.n, "k": params.k, "C": params.C, "r": r, "trials": trials,
            "discarded": discarded,
            "discard_rate": discarded / max(1, trials * len(levels)),
            "c_var": c_var,
            "levels": [entry.to_dict() for entry in levels],
        },
    )
