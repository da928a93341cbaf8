"""内置命令模块"""

from .bench_command import BenchCommand
from .design_command import DesignCommand
from .simulate_command import SimulateCommand
from .sweep_command import SweepCommand
from .verify_command import VerifyCommand

__all__ = [
    'BenchCommand',
    'DesignCommand',
    'SimulateCommand',
    'SweepCommand',
    'VerifyCommand',
]
