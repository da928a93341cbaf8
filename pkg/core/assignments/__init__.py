"""
测试分配模块
"""

from .base_assignment import BaseAssignment
from .explicit_assignment import ExplicitAssignment, build_explicit_assignment
from .hash_assignment import HashAssignment, build_hash_assignment
from .layout import LayoutSegment, TestLayout

__all__ = [
    'BaseAssignment',
    'ExplicitAssignment',
    'HashAssignment',
    'LayoutSegment',
    'TestLayout',
    'build_explicit_assignment',
    'build_hash_assignment',
]
