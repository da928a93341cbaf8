"""
对照基线模块
"""

from .bloom import BloomDesign, bloom_decode, bloom_simulate, build_bloom
from .saffron import SaffronDesign, build_saffron, isolated_defectives, saffron_decode, saffron_simulate

__all__ = [
    'BloomDesign',
    'SaffronDesign',
    'bloom_decode',
    'bloom_simulate',
    'build_bloom',
    'build_saffron',
    'isolated_defectives',
    'saffron_decode',
    'saffron_simulate',
]
