"""
测试结果与模拟模块
"""

from .outcomes import Outcomes
from .simulate import simulate_fast, simulate_naive, validate_defectives

__all__ = ['Outcomes', 'simulate_fast', 'simulate_naive', 'validate_defectives']
