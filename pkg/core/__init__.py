"""
splitpool 核心模块
"""
