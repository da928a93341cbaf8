"""
译码模块
"""

from .decoder import DecodeResult, decode
from .exhaustive import exhaustive_consistent

__all__ = ['DecodeResult', 'decode', 'exhaustive_consistent']
