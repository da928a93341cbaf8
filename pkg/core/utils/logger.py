import logging
import sys

LOGGER_NAME = "splitpool"
LOG_FORMAT = "[%(asctime)s] [%(levelname)s] %(name)s: %(message)s"

logger = logging.getLogger(LOGGER_NAME)
logger.addHandler(logging.NullHandler())


class StderrHandler(logging.StreamHandler):
    """每次输出时取当前的 sys.stderr"""

    def __init__(self, level=logging.NOTSET):
        logging.Handler.__init__(self, level)

    @property
    def stream(self):
        return sys.stderr


def setup_logging(level: str = "INFO") -> logging.Logger:
    """
    为 splitpool 日志器挂载 stderr 输出

    Args:
        level: 日志级别名称，例如 INFO、DEBUG

    Returns:
        logging.Logger: 配置完成的日志器
    """
    resolved = logging.getLevelName(str(level).upper())
    if not isinstance(resolved, int):
        resolved = logging.INFO

    # 重复调用时不叠加 handler
    if not any(isinstance(h, StderrHandler) for h in logger.handlers):
        handler = StderrHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)

    logger.setLevel(resolved)
    return logger
