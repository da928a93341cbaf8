"""参数网格扫描命令"""
import argparse
from typing import List

from ...config.grid_config import GridConfigManager
from ...config.params import new_params
from ...errors import ExitCode, ParameterError
from ...managers.trial_runner import TrialConfig, TrialRunner, summarize
from ...utils.logger import logger
from ..base_command import BaseCommand, seed_type
from ..messages import Messages


class SweepCommand(BaseCommand):
    """在 n、k、C、C'、C̃ 与变体的网格上批量运行试验"""

    def __init__(self, app=None):
        super().__init__(name="sweep", help_text="在参数网格上批量运行试验（CSV）", priority=30)
        self.app = app

    def configure(self, parser: argparse.ArgumentParser):
        parser.add_argument("--grid", default=None, help="网格配置 JSON 文件")
        parser.add_argument("--n", default=None, help="物品数列表，如 1024,16384")
        parser.add_argument("--k", default=None, help="缺陷数上界列表，如 16,32,64")
        parser.add_argument("--C", default=None, help="C 列表")
        parser.add_argument("--Cprime", default=None, help="C' 列表")
        parser.add_argument("--Ctil", default=None, help="C̃ 列表")
        parser.add_argument("--variant", default=None, help="变体列表，如 explicit,hashed,saffron")
        parser.add_argument("--trials", type=int, default=None, help="每个网格单元的试验次数")
        parser.add_argument("--r", type=int, default=None, help="哈希独立度，默认随 k 取 ceil(log2 k)+3")
        parser.add_argument("--cb", type=int, default=8, help="SAFFRON bundle 数倍数")
        parser.add_argument("--final-scale", dest="final_scale", choices=("logk", "logn"), default="logk")
        parser.add_argument("--defectives", type=int, default=None, help="每次试验的缺陷数")
        parser.add_argument("--seed", type=seed_type, default=0, help="64 位主种子")
        self.add_output_argument(parser)

    def execute(self, args: argparse.Namespace) -> int:
        manager = GridConfigManager(args.grid)
        grid = manager.grid
        try:
            grid.update({
                "n": args.n, "k": args.k, "C": args.C, "Cprime": args.Cprime,
                "Ctil": args.Ctil, "variant": args.variant, "trials": args.trials,
            })
        except ValueError as e:
            raise ParameterError(str(e)) from e

        threads = self.app.settings.threads if self.app is not None else 1
        runner = TrialRunner(threads)
        rows: List[dict] = []
        for cell in grid.cells():
            params = new_params(cell["n"], cell["k"], C=cell["C"], Cprime=cell["Cprime"],
                                Ctil=cell["Ctil"], seed=args.seed, final_scale=args.final_scale)
            config = TrialConfig.create(params, cell["variant"], r=args.r, cb=args.cb,
                                        defectives=args.defectives)
            records = runner.run(config, grid.trials)
            rows.extend(record.to_row() for record in records)
            rows.append(summarize(records, config))
            logger.info(Messages.SWEEP_CELL_DONE.format(cell))

        if not self.writer_for(args).write_csv(rows):
            logger.error(Messages.WRITE_FAILED)
            return ExitCode.IO
        return ExitCode.OK
