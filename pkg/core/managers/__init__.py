"""
管理器模块
"""
