"""命令工厂，负责创建和配置命令"""
from typing import List

from ..utils.logger import logger
from .base_command import BaseCommand
from .builtin import BenchCommand, DesignCommand, SimulateCommand, SweepCommand, VerifyCommand
from .command_registry import CommandRegistry


class CommandFactory:
    """命令工厂，负责创建和配置命令"""

    @staticmethod
    def create_builtin_commands(app) -> List[BaseCommand]:
        """
        创建所有内置命令

        Args:
            app: 应用实例，提供运行设置

        Returns:
            List[BaseCommand]: 创建的命令列表
        """
        commands = []
        for command_cls in (DesignCommand, SimulateCommand, SweepCommand, VerifyCommand, BenchCommand):
            commands.append(command_cls(app))
            logger.debug(f"创建命令: {command_cls.__name__}")
        return commands

    @staticmethod
    def setup_command_registry(app) -> CommandRegistry:
        """
        设置并配置命令注册表

        Args:
            app: 应用实例

        Returns:
            CommandRegistry: 配置好的命令注册表
        """
        log_level = app.settings.log_level if app is not None else "INFO"
        registry = CommandRegistry(default_log_level=log_level)
        registry.register_multiple(CommandFactory.create_builtin_commands(app))
        return registry
