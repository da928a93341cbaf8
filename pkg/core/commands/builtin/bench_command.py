"""译码计时命令"""
import argparse

from ...config.settings import parse_int_list
from ...errors import ExitCode, ParameterError
from ...managers.bench_runner import BenchRunner
from ...utils.logger import logger
from ..base_command import BaseCommand
from ..messages import Messages


class BenchCommand(BaseCommand):
    """对一个或多个 k 值计时，输出 JSON"""

    def __init__(self, app=None):
        super().__init__(name="bench", help_text="译码计时（JSON）", priority=10)
        self.app = app

    def configure(self, parser: argparse.ArgumentParser):
        self.add_problem_arguments(parser, k_list=True)
        parser.add_argument("--warmup", type=int, default=3, help="预热次数")
        parser.add_argument("--iterations", type=int, default=20, help="计时次数")
        parser.add_argument("--defectives", type=int, default=None, help="缺陷数，默认为请求的 k")
        self.add_output_argument(parser)

    def execute(self, args: argparse.Namespace) -> int:
        try:
            ks = parse_int_list(args.k, [16])
        except ValueError as e:
            raise ParameterError(str(e)) from e
        runner = BenchRunner(args.warmup, args.iterations)
        reports = []
        for k in ks:
            params = self.params_from_args(args, k=k)
            config = self.trial_config_from_args(args, params)
            reports.append(runner.run(config))
        if not self.writer_for(args).write_json({"bench": reports}):
            logger.error(Messages.WRITE_FAILED)
            return ExitCode.IO
        return ExitCode.OK
