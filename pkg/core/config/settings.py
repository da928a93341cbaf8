import json
import os
from dataclasses import dataclass
from typing import Any, Callable, List, Mapping, Optional


def _to_str(value: Any, default: str = "") -> str:
    if value is None:
        return default
    if isinstance(value, str):
        return value
    return str(value)


def _to_bool(value: Any, default: bool = False) -> bool:
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, float)):
        return value != 0
    if isinstance(value, str):
        v = value.strip().lower()
        if v in ("1", "true", "yes", "y", "on"):
            return True
        if v in ("0", "false", "no", "n", "off"):
            return False
    return default


def _to_int(value: Any, default: int) -> int:
    if value is None:
        return default
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return int(value)
    if isinstance(value, str):
        v = value.strip()
        if v == "":
            return default
        try:
            # 允许 0x 前缀的种子
            return int(v, 0)
        except ValueError:
            try:
                return int(float(v))
            except ValueError:
                return default
    return default


def _to_list(value: Any, default: list) -> list:
    if value is None:
        return list(default)
    if isinstance(value, list):
        return value
    if isinstance(value, tuple):
        return list(value)
    if isinstance(value, str):
        v = value.strip()
        if v == "":
            return list(default)
        try:
            parsed = json.loads(v)
        except Exception:
            parsed = None
        if isinstance(parsed, list):
            return parsed
        parts = [part.strip() for part in v.split(",")]
        parts = [part for part in parts if part]
        return parts if parts else list(default)
    return [value]


def parse_list(value: Any, convert: Callable[[Any], Any], default: Optional[list] = None) -> List[Any]:
    """
    将逗号分隔或 JSON 列表字符串解析为类型化列表，用于 sweep 的网格参数

    Args:
        value: 原始值，例如 "16,32,64" 或 "[16, 32]"
        convert: 逐项转换函数
        default: 值为空时的默认列表

    Returns:
        List[Any]: 转换后的列表

    Raises:
        ValueError: 某一项无法转换
    """
    items = _to_list(value, default or [])
    return [convert(item) for item in items]


def parse_int_list(value: Any, default: Optional[list] = None) -> List[int]:
    def _strict_int(item: Any) -> int:
        if isinstance(item, int) and not isinstance(item, bool):
            return item
        text = _to_str(item).strip()
        try:
            return int(text, 0)
        except ValueError:
            raise ValueError(f"无法解析为整数: {item!r}")

    return parse_list(value, _strict_int, default)


def parse_str_list(value: Any, default: Optional[list] = None) -> List[str]:
    return parse_list(value, lambda item: _to_str(item).strip(), default)


@dataclass(frozen=True)
class RunSettings:
    """从环境变量读取的运行设置"""
    threads: int = 1
    log_level: str = "INFO"

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "RunSettings":
        """
        读取 SPLITPOOL_THREADS 与 SPLITPOOL_LOG_LEVEL

        线程数被限制在 [1, cpu_count] 范围内。
        """
        env = os.environ if environ is None else environ
        cpu_count = os.cpu_count() or 1
        threads = _to_int(env.get("SPLITPOOL_THREADS"), 1)
        threads = min(max(threads, 1), cpu_count)
        log_level = _to_str(env.get("SPLITPOOL_LOG_LEVEL"), "INFO").strip().upper() or "INFO"
        return cls(threads=threads, log_level=log_level)
