"""引理校验命令"""
import argparse
from typing import Callable, Dict, List

from ...config.defaults import VerifyDefaults
from ...config.params import new_params
from ...errors import ExitCode, ParameterError, VerificationFailedError
from ...field.rwise import verify_rwise
from ...utils.logger import logger
from ...verification.branching import branching_bound_check, branching_mc_check
from ...verification.hashed_pd import hashed_pd_mean_mc
from ...verification.leaf import leaf_mgf_check, leaf_tail_check
from ...verification.mean_bounds import mean_bounds_mc
from ...verification.report import CheckReport
from ..base_command import BaseCommand, seed_type
from ..messages import Messages

CHECKS = ("branching", "leaf-tail", "leaf-mgf", "mean", "hashed-pd", "rwise")


class VerifyCommand(BaseCommand):
    """运行精确与蒙特卡洛校验，任一项未通过时以退出码 3 结束"""

    def __init__(self, app=None):
        super().__init__(name="verify", help_text="运行引理校验（JSON）", priority=20)
        self.app = app
        self.defaults = VerifyDefaults()
        self._runners: Dict[str, Callable[[argparse.Namespace], List[CheckReport]]] = {
            "branching": self._run_branching,
            "leaf-tail": self._run_leaf_tail,
            "leaf-mgf": self._run_leaf_mgf,
            "mean": self._run_mean,
            "hashed-pd": self._run_hashed_pd,
            "rwise": self._run_rwise,
        }

    def configure(self, parser: argparse.ArgumentParser):
        parser.add_argument("--check", choices=CHECKS + ("all",), default="all", help="校验项")
        parser.add_argument("--q", type=float, default=None, help="标记概率")
        parser.add_argument("--hmax", type=int, default=None, help="最大树高")
        parser.add_argument("--lambda", dest="lam", type=float, default=None, help="矩母函数参数 λ")
        parser.add_argument("--m", type=int, default=None, help="r 独立性枚举的域次数")
        parser.add_argument("--r", type=int, default=None, help="独立度")
        parser.add_argument("--bits", type=int, default=None, help="r 独立性枚举的截断位宽")
        parser.add_argument("--n", type=int, default=None)
        parser.add_argument("--k", type=int, default=None)
        parser.add_argument("--C", type=int, default=None)
        parser.add_argument("--trials", type=int, default=None, help="蒙特卡洛试验次数")
        parser.add_argument("--seed", type=seed_type, default=0, help="64 位种子")
        self.add_output_argument(parser)

    def _pick(self, value, default):
        return default if value is None else value

    def _run_branching(self, args) -> List[CheckReport]:
        d = self.defaults
        q = self._pick(args.q, d.branching_q)
        trials = self._pick(args.trials, d.branching_mc_trials)
        return [
            branching_bound_check(q, d.branching_n_max),
            branching_mc_check(q, trials, args.seed, n_max=d.branching_tv_n_max,
                               threshold=d.branching_tv_threshold, depth_cap=d.depth_cap),
        ]

    def _run_leaf_tail(self, args) -> List[CheckReport]:
        d = self.defaults
        return [leaf_tail_check(self._pick(args.q, d.leaf_q), self._pick(args.hmax, d.leaf_h_max))]

    def _run_leaf_mgf(self, args) -> List[CheckReport]:
        d = self.defaults
        return [leaf_mgf_check(self._pick(args.q, d.leaf_q), self._pick(args.hmax, d.leaf_h_max),
                               self._pick(args.lam, d.leaf_lambda))]

    def _run_mean(self, args) -> List[CheckReport]:
        d = self.defaults
        params = new_params(self._pick(args.n, d.mean_n), self._pick(args.k, d.mean_k),
                            C=self._pick(args.C, d.mean_C), seed=args.seed)
        return mean_bounds_mc(params, self._pick(args.trials, d.mean_trials), args.seed)

    def _run_hashed_pd(self, args) -> List[CheckReport]:
        d = self.defaults
        params = new_params(self._pick(args.n, d.hashed_n), self._pick(args.k, d.hashed_k),
                            C=self._pick(args.C, d.hashed_C), Ctil=1, seed=args.seed)
        return [hashed_pd_mean_mc(params, self._pick(args.r, d.hashed_r),
                                  self._pick(args.trials, d.hashed_trials), args.seed)]

    def _run_rwise(self, args) -> List[CheckReport]:
        d = self.defaults
        return [verify_rwise(self._pick(args.m, d.rwise_m), self._pick(args.r, d.rwise_r),
                             out_bits=args.bits)]

    def run_checks(self, args: argparse.Namespace) -> List[CheckReport]:
        names = CHECKS if args.check == "all" else (args.check,)
        reports: List[CheckReport] = []
        for name in names:
            runner = self._runners.get(name)
            if runner is None:
                raise ParameterError(Messages.UNKNOWN_CHECK.format(name))
            for report in runner(args):
                level = "info" if report.passed else "error"
                getattr(logger, level)(f"{report.check}: 观测 {report.observed:.6g}, 界 {report.bound:.6g}, "
                                       f"{'通过' if report.passed else '未通过'}")
                reports.append(report)
        return reports

    def execute(self, args: argparse.Namespace) -> int:
        reports = self.run_checks(args)
        passed = sum(1 for report in reports if report.passed)
        logger.info(Messages.VERIFY_SUMMARY.format(passed, len(reports)))
        payload = {"checks": [report.to_dict() for report in reports], "pass": passed == len(reports)}
        if not self.writer_for(args).write_json(payload):
            logger.error(Messages.WRITE_FAILED)
            return ExitCode.IO
        if passed != len(reports):
            failed = [report.check for report in reports if not report.passed]
            raise VerificationFailedError(", ".join(failed))
        return ExitCode.OK
