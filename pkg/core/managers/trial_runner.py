import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import repeat
from typing import Any, Dict, List, Optional

import numpy as np

from ..assignments.explicit_assignment import build_explicit_assignment
from ..assignments.hash_assignment import build_hash_assignment
from ..baselines.bloom import bloom_decode, bloom_simulate, build_bloom
from ..baselines.saffron import build_saffron, saffron_decode, saffron_simulate
from ..config.defaults import HashedDefaults, VARIANTS
from ..config.params import ProblemParams, num_tests
from ..decoding.decoder import decode
from ..errors import ParameterError
from ..outcomes.simulate import simulate_fast
from ..utils.logger import logger
from ..utils.prng import StreamTag, derive_seed, sample_defectives

CSV_FIELDS = [
    "trial", "n", "k", "C", "Cprime", "Ctil", "r", "variant", "t",
    "success", "n_total", "n_leaf_pd", "decode_ns", "seed",
]


@dataclass(frozen=True)
class TrialConfig:
    """一组试验共用的配置：参数、变体与缺陷数"""
    params: ProblemParams
    variant: str = "explicit"
    r: int = 0
    cb: int = 8
    defectives: Optional[int] = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ParameterError(f"未知变体: {self.variant}")
        if self.variant == "hashed" and self.r < 2:
            raise ParameterError(f"哈希变体要求 r ≥ 2，收到 {self.r}")
        count = self.num_defectives
        if not 0 <= count <= self.params.k:
            raise ParameterError(f"缺陷数必须在 [0, {self.params.k}] 内，收到 {count}")

    @classmethod
    def create(cls, params: ProblemParams, variant: str, r: Optional[int] = None,
               cb: int = 8, defectives: Optional[int] = None) -> "TrialConfig":
        """哈希变体未指定 r 时取默认独立度，其他变体 r 记为 0"""
        if variant == "hashed":
            r = HashedDefaults.independence(params.k) if r is None else r
        else:
            r = 0
        return cls(params=params, variant=variant, r=r, cb=cb, defectives=defectives)

    @property
    def num_defectives(self) -> int:
        if self.defectives is not None:
            return self.defectives
        requested = self.params.requested_k or self.params.k
        return min(requested, self.params.k)


@dataclass
class TrialRecord:
    """单次试验的结果行"""
    trial: int
    n: int
    k: int
    C: int
    Cprime: int
    Ctil: int
    r: int
    variant: str
    t: int
    success: bool
    n_total: int
    n_leaf_pd: int
    decode_ns: int
    seed: int
    superset: bool = True
    nodes_visited: int = 0

    def to_row(self) -> Dict[str, Any]:
        return {
            "trial": self.trial,
            "n": self.n,
            "k": self.k,
            "C": self.C,
            "Cprime": self.Cprime,
            "Ctil": self.Ctil,
            "r": self.r,
            "variant": self.variant,
            "t": self.t,
            "success": int(self.success),
            "n_total": self.n_total,
            "n_leaf_pd": self.n_leaf_pd,
            "decode_ns": self.decode_ns,
            "seed": self.seed,
        }


def run_trial(config: TrialConfig, trial: int) -> TrialRecord:
    """
    运行一次试验：新设计、新缺陷集合、模拟、译码

    试验种子为 derive_seed(主种子, TRIAL, 试验号)，单独重跑任意一次试验结果不变。

    Args:
        config: 试验配置
        trial: 试验号

    Returns:
        TrialRecord: 结果行
    """
    base = config.params
    trial_seed = derive_seed(base.seed, StreamTag.TRIAL, trial)
    params = base.with_seed(trial_seed)
    defectives = sample_defectives(params.n, config.num_defectives,
                                   derive_seed(trial_seed, StreamTag.DEFECTIVES))

    n_total = 0
    n_leaf_pd = 0
    nodes_visited = 0
    if config.variant in ("explicit", "hashed"):
        if config.variant == "explicit":
            assignment = build_explicit_assignment(params)
        else:
            assignment = build_hash_assignment(params, config.r)
        outcomes = simulate_fast(assignment, defectives)
        result = decode(assignment, outcomes, params)
        estimate = result.estimate
        decode_ns = result.decode_ns
        n_total = result.n_total
        n_leaf_pd = result.n_leaf_pd
        nodes_visited = result.nodes_visited
        t = num_tests(params)
    elif config.variant == "saffron":
        design = build_saffron(params.n, params.k, config.cb, trial_seed)
        outcomes = saffron_simulate(design, defectives)
        start_ns = time.perf_counter_ns()
        estimate = saffron_decode(design, outcomes)
        decode_ns = time.perf_counter_ns() - start_ns
        t = design.num_tests
    else:
        design = build_bloom(params)
        outcomes = bloom_simulate(design, defectives)
        start_ns = time.perf_counter_ns()
        estimate = bloom_decode(design, outcomes)
        decode_ns = time.perf_counter_ns() - start_ns
        t = design.num_tests

    success = bool(np.array_equal(estimate, defectives))
    superset = bool(np.all(np.isin(defectives, estimate)))
    logger.debug(f"试验 {trial} 完成: 变体={config.variant}, 成功={success}, 估计 {estimate.size} 个")
    return TrialRecord(
        trial=trial, n=params.n, k=params.k, C=params.C, Cprime=params.Cprime,
        Ctil=params.Ctil, r=config.r, variant=config.variant, t=t, success=success,
        n_total=n_total, n_leaf_pd=n_leaf_pd, decode_ns=int(decode_ns), seed=trial_seed,
        superset=superset, nodes_visited=nodes_visited,
    )


def summarize(records: List[TrialRecord], config: TrialConfig) -> Dict[str, Any]:
    """
    汇总行：success 列为经验成功率，其余数值列为均值，seed 列为主种子

    Args:
        records: 试验结果
        config: 试验配置

    Returns:
        Dict[str, Any]: 与 CSV_FIELDS 同列的汇总行
    """
    params = config.params

    def _mean(name: str) -> float:
        if not records:
            return 0.0
        return float(np.mean([getattr(record, name) for record in records]))

    return {
        "trial": "summary",
        "n": params.n,
        "k": params.k,
        "C": params.C,
        "Cprime": params.Cprime,
        "Ctil": params.Ctil,
        "r": config.r,
        "variant": config.variant,
        "t": _mean("t"),
        "success": _mean("success"),
        "n_total": _mean("n_total"),
        "n_leaf_pd": _mean("n_leaf_pd"),
        "decode_ns": _mean("decode_ns"),
        "seed": params.seed,
    }


class TrialRunner:
    """试验调度器，worker 数大于 1 时把试验分发到进程池"""

    def __init__(self, threads: int = 1):
        self.threads = max(1, threads)

    def run(self, config: TrialConfig, trials: int) -> List[TrialRecord]:
        """
        运行 trials 次试验，结果按试验号排列，与完成顺序无关

        Args:
            config: 试验配置
            trials: 试验次数

        Returns:
            List[TrialRecord]: 结果行
        """
        if trials < 1:
            raise ParameterError(f"trials 必须至少为 1，收到 {trials}")
        logger.info(f"开始试验: 变体={config.variant}, n={config.params.n}, k={config.params.k}, "
                    f"共 {trials} 次, worker {self.threads} 个")

        if self.threads == 1 or trials == 1:
            records = [run_trial(config, trial) for trial in range(trials)]
        else:
            chunksize = max(1, trials // (4 * self.threads))
            with ProcessPoolExecutor(max_workers=self.threads) as executor:
                records = list(executor.map(run_trial, repeat(config), range(trials), chunksize=chunksize))

        failures = sum(1 for record in records if not record.success)
        violations = sum(1 for record in records if not record.superset)
        # SAFFRON 只保证不误报，漏检属于正常失败
        if violations and config.variant != "saffron":
            logger.error(f"{violations} 次试验的估计集合未包含全部缺陷")
        logger.info(f"试验结束: 失败 {failures}/{trials} 次")
        return records
