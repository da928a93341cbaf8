"""异常与退出码定义"""


class SplitPoolError(Exception):
    """splitpool 所有异常的基类"""
    pass


class ParameterError(SplitPoolError, ValueError):
    """参数校验失败时引发的异常"""
    pass


class LayoutMismatchError(SplitPoolError):
    """测试结果与测试分配的布局不一致时引发的异常"""
    pass


class ResourceError(SplitPoolError, MemoryError):
    """显式分配无法申请到足够内存时引发的异常"""
    pass


class VerificationFailedError(SplitPoolError):
    """引理校验未通过时引发的异常"""
    pass


class ExitCode:
    """命令行退出码常量"""
    OK = 0
    IO = 1
    USAGE = 2
    VERIFICATION = 3
