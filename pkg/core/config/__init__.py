"""
配置模块：问题参数、变体默认值与运行环境设置
"""
