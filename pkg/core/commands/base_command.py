"""命令基类定义"""
import argparse
from abc import ABC, abstractmethod
from typing import Optional

from ..config.defaults import VARIANTS, get_variant_defaults
from ..config.params import ProblemParams, new_params
from ..config.settings import _to_int
from ..managers.report_writer import ReportWriter
from ..managers.trial_runner import TrialConfig


def seed_type(text: str) -> int:
    """argparse 类型：十进制或 0x 十六进制的 64 位种子"""
    value = _to_int(text, -1)
    if value < 0 or value > 0xFFFFFFFFFFFFFFFF:
        raise argparse.ArgumentTypeError(f"无效的种子: {text}")
    return value


class BaseCommand(ABC):
    """命令基类，定义了所有子命令的基本接口"""

    def __init__(self, name: str, help_text: str, priority: int = 0):
        """
        初始化命令

        Args:
            name: 子命令名称
            help_text: 帮助文本
            priority: 优先级，数字越大在帮助中越靠前
        """
        self.name = name
        self.help_text = help_text
        self.priority = priority

    @abstractmethod
    def configure(self, parser: argparse.ArgumentParser):
        """为子命令添加参数"""
        pass

    @abstractmethod
    def execute(self, args: argparse.Namespace) -> int:
        """
        执行命令

        Args:
            args: 解析后的参数

        Returns:
            int: 退出码
        """
        raise NotImplementedError

    def get_help_text(self) -> str:
        return f"{self.name} - {self.help_text}"

    def get_priority(self) -> int:
        return self.priority

    @staticmethod
    def add_problem_arguments(parser: argparse.ArgumentParser, variants=VARIANTS, k_list: bool = False):
        """添加 n、k、C、C'、C̃、种子与变体等公共参数；k_list 为真时 --k 接受逗号分隔的列表"""
        parser.add_argument("--n", type=int, default=1024, help="物品数，向上取整到 2 的幂")
        if k_list:
            parser.add_argument("--k", default="16", help="缺陷数上界列表，如 16,32,64")
        else:
            parser.add_argument("--k", type=int, default=16, help="缺陷数上界，向上取整到 2 的幂")
        parser.add_argument("--C", type=int, default=None, help="每层测试倍数（2 的幂，≥ 4）")
        parser.add_argument("--Cprime", type=int, default=None, help="末层序列倍数")
        parser.add_argument("--Ctil", type=int, default=None, help="每层重复次数")
        parser.add_argument("--variant", choices=variants, default="explicit", help="设计变体")
        parser.add_argument("--r", type=int, default=None, help="哈希独立度，默认 ceil(log2 k)+3")
        parser.add_argument("--cb", type=int, default=None, help="SAFFRON bundle 数倍数")
        parser.add_argument("--final-scale", dest="final_scale", choices=("logk", "logn"), default=None,
                            help="末层序列数按 log2 k 或 log2 n 缩放")
        parser.add_argument("--seed", type=seed_type, default=0, help="64 位主种子")

    @staticmethod
    def add_output_argument(parser: argparse.ArgumentParser):
        parser.add_argument("--out", default=None, help="输出文件，缺省写到标准输出")

    @staticmethod
    def params_from_args(args: argparse.Namespace, n: Optional[int] = None, k: Optional[int] = None,
                         variant: Optional[str] = None) -> ProblemParams:
        """按变体默认值补全未给出的参数并校验"""
        variant = variant or args.variant
        defaults = get_variant_defaults(variant)
        C = args.C if args.C is not None else getattr(defaults, "C", 16)
        Cprime = args.Cprime if args.Cprime is not None else getattr(defaults, "Cprime", 3)
        Ctil = args.Ctil if args.Ctil is not None else getattr(defaults, "Ctil", 1)
        final_scale = args.final_scale or getattr(defaults, "final_scale", "logk")
        return new_params(
            n=args.n if n is None else n,
            k=args.k if k is None else k,
            C=C, Cprime=Cprime, Ctil=Ctil, seed=args.seed, final_scale=final_scale,
        )

    @staticmethod
    def trial_config_from_args(args: argparse.Namespace, params: ProblemParams,
                               variant: Optional[str] = None) -> TrialConfig:
        variant = variant or args.variant
        cb = args.cb if args.cb is not None else get_variant_defaults("saffron").cb
        return TrialConfig.create(params, variant, r=args.r, cb=cb,
                                  defectives=getattr(args, "defectives", None))

    @staticmethod
    def writer_for(args: argparse.Namespace) -> ReportWriter:
        return ReportWriter(getattr(args, "out", None))
