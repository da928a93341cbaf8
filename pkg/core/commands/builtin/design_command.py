"""设计转储命令"""
import argparse

from ...assignments.explicit_assignment import build_explicit_assignment
from ...assignments.hash_assignment import build_hash_assignment
from ...baselines.bloom import build_bloom
from ...baselines.saffron import build_saffron
from ...errors import ExitCode
from ...utils.logger import logger
from ..base_command import BaseCommand
from ..messages import Messages


class DesignCommand(BaseCommand):
    """生成可逐位比对的设计 JSON"""

    def __init__(self, app=None):
        super().__init__(name="design", help_text="生成设计转储（JSON）", priority=50)
        self.app = app

    def configure(self, parser: argparse.ArgumentParser):
        self.add_problem_arguments(parser)
        self.add_output_argument(parser)

    def build_dump(self, args: argparse.Namespace) -> dict:
        params = self.params_from_args(args)
        config = self.trial_config_from_args(args, params)
        if args.variant == "explicit":
            dump = build_explicit_assignment(params).to_dict()
        elif args.variant == "hashed":
            dump = build_hash_assignment(params, config.r).to_dict()
        elif args.variant == "saffron":
            dump = build_saffron(params.n, params.k, config.cb, params.seed).to_dict()
        else:
            dump = build_bloom(params).to_dict()
        dump.setdefault("t", dump.get("params", {}).get("t"))
        return dump

    def execute(self, args: argparse.Namespace) -> int:
        dump = self.build_dump(args)
        logger.info(Messages.DESIGN_WRITTEN.format(args.variant, dump["t"]))
        if not self.writer_for(args).write_json(dump):
            logger.error(Messages.WRITE_FAILED)
            return ExitCode.IO
        return ExitCode.OK
