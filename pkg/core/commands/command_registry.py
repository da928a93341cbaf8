"""命令注册表，负责构建命令行解析器并分发子命令"""
import argparse
from typing import Dict, List, Optional, Sequence

from ..errors import ExitCode, ParameterError, ResourceError, VerificationFailedError
from ..utils.logger import logger, setup_logging
from .base_command import BaseCommand
from .messages import Messages


class CommandRegistry:
    """统一的命令注册和分发机制"""

    def __init__(self, prog: str = "splitpool", default_log_level: str = "INFO"):
        self.prog = prog
        self.default_log_level = default_log_level
        self.commands: List[BaseCommand] = []

    def register(self, command: BaseCommand):
        """
        注册命令

        Args:
            command: 命令实例
        """
        self.commands.append(command)
        # 按优先级排序，优先级高的在前面
        self.commands.sort(key=lambda cmd: cmd.get_priority(), reverse=True)
        logger.debug(f"注册命令: {command.__class__.__name__}, 名称: {command.name}, 优先级: {command.priority}")

    def register_multiple(self, commands: List[BaseCommand]):
        for command in commands:
            self.register(command)

    def get_command(self, name: str) -> Optional[BaseCommand]:
        for command in self.commands:
            if command.name == name:
                return command
        return None

    def build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(prog=self.prog, description=Messages.DESCRIPTION)
        parser.add_argument("--log-level", dest="log_level", default=self.default_log_level,
                            help="日志级别，默认取 SPLITPOOL_LOG_LEVEL")
        subparsers = parser.add_subparsers(dest="command", metavar="<command>")
        subparsers.required = True
        for command in self.commands:
            sub = subparsers.add_parser(command.name, help=command.help_text, description=command.get_help_text())
            command.configure(sub)
        return parser

    def handle_command(self, argv: Optional[Sequence[str]] = None) -> int:
        """
        解析参数并执行对应的子命令

        Args:
            argv: 命令行参数，缺省读取 sys.argv

        Returns:
            int: 退出码
        """
        parser = self.build_parser()
        try:
            args = parser.parse_args(argv)
        except SystemExit as e:
            # argparse 的用法错误退出码为 2，--help 为 0
            return e.code if isinstance(e.code, int) else ExitCode.USAGE

        setup_logging(args.log_level)
        command = self.get_command(args.command)
        if command is None:
            logger.error(Messages.UNKNOWN_COMMAND.format(args.command))
            return ExitCode.USAGE

        logger.debug(f"执行命令: {command.name}")
        try:
            return command.execute(args)
        except ParameterError as e:
            logger.error(Messages.INVALID_PARAMETER.format(e))
            return ExitCode.USAGE
        except VerificationFailedError as e:
            logger.error(Messages.VERIFICATION_FAILED.format(e))
            return ExitCode.VERIFICATION
        except ResourceError as e:
            logger.error(Messages.OUT_OF_MEMORY.format(e))
            return ExitCode.IO
        except OSError as e:
            logger.error(Messages.IO_FAILED.format(e))
            return ExitCode.IO
        except Exception as e:
            # 程序缺陷不映射为 I/O 退出码，记录堆栈后原样抛出
            logger.exception(f"执行命令 {command.__class__.__name__} 时发生错误: {e}")
            raise
