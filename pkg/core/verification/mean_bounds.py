import math
from typing import List, Tuple

import numpy as np

from ..assignments.explicit_assignment import build_explicit_assignment
from ..config.params import ProblemParams
from ..decoding.decoder import decode
from ..errors import ParameterError
from ..outcomes.simulate import simulate_fast
from ..utils.logger import logger
from ..utils.prng import StreamTag, derive_seed, sample_defectives
from .report import CheckReport

TAIL_FACTOR = 24


def _mean_and_stderr(values: np.ndarray) -> Tuple[float, float]:
    mean = float(values.mean())
    if values.size < 2:
        return mean, 0.0
    return mean, float(values.std(ddof=1) / math.sqrt(values.size))


def collect_reached_counts(params: ProblemParams, trials: int, seed: int) -> np.ndarray:
    """
    完全独立分配下逐次试验统计被触及的非缺陷节点

    每次试验使用新的设计与新的大小为 k 的缺陷集合，种子均由 (seed, 试验号) 派生。

    Returns:
        np.ndarray: 形状 (trials, 3)，列依次为非缺陷节点总数、非缺陷叶节点数、PD 叶节点数
    """
    rows = np.zeros((trials, 3), dtype=np.int64)
    for trial in range(trials):
        trial_seed = derive_seed(seed, StreamTag.TRIAL, trial)
        trial_params = params.with_seed(trial_seed)
        defectives = sample_defectives(params.n, params.k, derive_seed(trial_seed, StreamTag.DEFECTIVES))
        assignment = build_explicit_assignment(trial_params)
        outcomes = simulate_fast(assignment, defectives)
        result = decode(assignment, outcomes, trial_params, truth=defectives)
        rows[trial] = (result.reached_nondefective, result.n_leaf_nondefective, result.n_leaf_pd)
    return rows


def mean_bounds_mc(params: ProblemParams, trials: int, seed: int) -> List[CheckReport]:
    """
    检查非缺陷叶节点均值 ≤ 6k 与被触及非缺陷节点均值 ≤ 6k·log2(n/k)

    均值加 3 倍标准误仍不超过界时判定通过。

    Args:
        params: 问题参数（C ≥ 4）
        trials: 试验次数
        seed: 64 位种子

    Returns:
        List[CheckReport]: mean-leaf 与 mean-total 两项报告
    """
    if params.C < 4:
        raise ParameterError(f"均值界要求 C ≥ 4，收到 C={params.C}")
    if trials < 1:
        raise ParameterError(f"trials 必须至少为 1，收到 {trials}")
    logger.info(f"开始均值界蒙特卡洛: n={params.n}, k={params.k}, C={params.C}, 试验 {trials} 次")
    rows = collect_reached_counts(params, trials, seed)
    k = params.k

    leaf_mean, leaf_err = _mean_and_stderr(rows[:, 1].astype(float))
    leaf_bound = 6.0 * k
    tail_fraction = float(np.mean(rows[:, 2] > TAIL_FACTOR * k))
    leaf_report = CheckReport(
        check="mean-leaf",
        bound=leaf_bound,
        observed=leaf_mean,
        stderr=leaf_err,
        passed=leaf_mean + 3 * leaf_err <= leaf_bound,
        details={
            "n": params.n, "k": k, "C": params.C, "trials": trials,
            "mean_leaf_pd": float(rows[:, 2].mean()),
            "tail_fraction": tail_fraction,
            "tail_threshold": TAIL_FACTOR * k,
        },
    )

    total_mean, total_err = _mean_and_stderr(rows[:, 0].astype(float))
    total_bound = 6.0 * k * (params.log_n - params.log_k)
    total_report = CheckReport(
        check="mean-total",
        bound=total_bound,
        observed=total_mean,
        stderr=total_err,
        passed=total_mean + 3 * total_err <= total_bound,
        details={"n": params.n, "k": k, "C": params.C, "trials": trials},
    )
    return [leaf_report, total_report]
