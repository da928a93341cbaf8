import time
from statistics import median
from typing import Any, Dict, List

from ..assignments.explicit_assignment import build_explicit_assignment
from ..assignments.hash_assignment import HashAssignment, build_hash_assignment
from ..baselines.bloom import bloom_decode, bloom_simulate, build_bloom
from ..baselines.saffron import build_saffron, saffron_decode, saffron_simulate
from ..config.params import num_tests
from ..decoding.decoder import decode
from ..errors import ParameterError
from ..outcomes.simulate import simulate_fast
from ..utils.logger import logger
from ..utils.prng import StreamTag, derive_seed, sample_defectives
from .trial_runner import TrialConfig


class BenchRunner:
    """译码计时：固定一个设计与缺陷集合，预热后重复译码取中位数"""

    def __init__(self, warmup: int = 3, iterations: int = 20):
        if warmup < 0 or iterations < 1:
            raise ParameterError(f"预热次数必须 ≥ 0 且测量次数必须 ≥ 1，收到 {warmup}/{iterations}")
        self.warmup = warmup
        self.iterations = iterations

    def run(self, config: TrialConfig) -> Dict[str, Any]:
        """
        对一个配置计时

        Args:
            config: 试验配置，使用其主种子构建设计

        Returns:
            Dict[str, Any]: 中位译码时间、访问节点数，哈希变体另含每次译码的域乘法次数
        """
        params = config.params
        defectives = sample_defectives(params.n, config.num_defectives,
                                       derive_seed(params.seed, StreamTag.DEFECTIVES))
        report: Dict[str, Any] = {
            "variant": config.variant,
            "n": params.n,
            "k": params.k,
            "C": params.C,
            "Cprime": params.Cprime,
            "Ctil": params.Ctil,
            "r": config.r,
            "warmup": self.warmup,
            "iterations": self.iterations,
        }

        if config.variant in ("explicit", "hashed"):
            if config.variant == "explicit":
                assignment = build_explicit_assignment(params)
            else:
                assignment = build_hash_assignment(params, config.r)
            outcomes = simulate_fast(assignment, defectives)
            timings: List[int] = []
            multiplications: List[int] = []
            result = None
            for i in range(self.warmup + self.iterations):
                if isinstance(assignment, HashAssignment):
                    assignment.counter.reset()
                result = decode(assignment, outcomes, params)
                if i >= self.warmup:
                    timings.append(result.decode_ns)
                    if isinstance(assignment, HashAssignment):
                        multiplications.append(assignment.counter.multiplications)
            report["t"] = num_tests(params)
            report["nodes_visited"] = result.nodes_visited
            report["n_leaf_pd"] = result.n_leaf_pd
            report["storage_bits"] = assignment.storage_bits
            if multiplications:
                report["field_multiplications"] = int(median(multiplications))
        else:
            if config.variant == "saffron":
                design = build_saffron(params.n, params.k, config.cb, params.seed)
                outcomes = saffron_simulate(design, defectives)
                decoder = saffron_decode
            else:
                design = build_bloom(params)
                outcomes = bloom_simulate(design, defectives)
                decoder = bloom_decode
            timings = []
            for i in range(self.warmup + self.iterations):
                start_ns = time.perf_counter_ns()
                decoder(design, outcomes)
                elapsed = time.perf_counter_ns() - start_ns
                if i >= self.warmup:
                    timings.append(elapsed)
            report["t"] = design.num_tests
            report["storage_bits"] = design.storage_bits

        report["median_decode_ns"] = int(median(timings))
        logger.info(f"计时完成: 变体={config.variant}, n={params.n}, k={params.k}, "
                    f"中位译码时间 {report['median_decode_ns'] / 1e6:.3f} ms")
        return report
