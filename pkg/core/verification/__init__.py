"""
引理校验模块
"""
