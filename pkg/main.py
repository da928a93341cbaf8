import sys
from typing import Optional, Sequence

from core.commands.command_factory import CommandFactory
from core.config.settings import RunSettings
from core.utils.logger import logger, setup_logging

VERSION = "1.0.0"


class SplitPoolApp:
    """命令行入口：读取运行设置并装配命令注册表"""

    def __init__(self, settings: Optional[RunSettings] = None):
        self.settings = settings or RunSettings.from_env()
        setup_logging(self.settings.log_level)
        self.command_registry = CommandFactory.setup_command_registry(self)
        logger.debug(f"splitpool {VERSION} 已初始化, worker {self.settings.threads} 个")

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """
        执行一条命令

        Args:
            argv: 命令行参数（不含程序名），缺省读取 sys.argv

        Returns:
            int: 退出码
        """
        return self.command_registry.handle_command(argv)


def main(argv: Optional[Sequence[str]] = None) -> int:
    return SplitPoolApp().run(argv)


if __name__ == "__main__":
    sys.exit(main())
