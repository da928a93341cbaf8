"""蒙特卡洛模拟命令"""
import argparse

from ...errors import ExitCode
from ...managers.trial_runner import TrialRunner, summarize
from ...utils.logger import logger
from ..base_command import BaseCommand
from ..messages import Messages


class SimulateCommand(BaseCommand):
    """逐次试验输出 CSV，最后附一行汇总"""

    def __init__(self, app=None):
        super().__init__(name="simulate", help_text="运行带种子的恢复试验（CSV）", priority=40)
        self.app = app

    def configure(self, parser: argparse.ArgumentParser):
        self.add_problem_arguments(parser)
        parser.add_argument("--trials", type=int, default=100, help="试验次数")
        parser.add_argument("--defectives", type=int, default=None, help="每次试验的缺陷数，默认为请求的 k")
        self.add_output_argument(parser)

    def execute(self, args: argparse.Namespace) -> int:
        params = self.params_from_args(args)
        config = self.trial_config_from_args(args, params)
        threads = self.app.settings.threads if self.app is not None else 1
        records = TrialRunner(threads).run(config, args.trials)
        summary = summarize(records, config)
        logger.info(Messages.SIMULATE_DONE.format(len(records), summary["success"]))

        rows = [record.to_row() for record in records]
        rows.append(summary)
        if not self.writer_for(args).write_csv(rows):
            logger.error(Messages.WRITE_FAILED)
            return ExitCode.IO
        return ExitCode.OK
