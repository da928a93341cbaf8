import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

from ..utils.logger import logger
from .trial_runner import CSV_FIELDS


def _is_stdout(path: Optional[str]) -> bool:
    return path is None or path == "-"


def render_csv(rows: Iterable[Dict[str, Any]], fields: List[str] = CSV_FIELDS) -> str:
    """渲染 CSV 文本（UTF-8，LF 换行）"""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def render_json(data: Any) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


class ReportWriter:
    """将 CSV 与 JSON 结果写到文件或标准输出"""

    def __init__(self, out: Optional[str] = None):
        self.out = out

    def _safe_file_operation(self, operation_func, operation_name: str, default_value=None):
        """安全的文件操作包装器"""
        try:
            return operation_func()
        except Exception as e:
            logger.error(f"{operation_name}失败: {e}")
            return default_value

    def _write_text(self, text: str, operation_name: str) -> bool:
        if _is_stdout(self.out):
            sys.stdout.write(text)
            sys.stdout.flush()
            return True

        def _write():
            path = Path(self.out)
            if path.parent and not path.parent.exists():
                path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w", encoding="utf-8", newline="") as f:
                f.write(text)
            logger.info(f"已写入{operation_name}: {path}")
            return True

        return self._safe_file_operation(_write, f"写入{operation_name}", False)

    def write_csv(self, rows: Iterable[Dict[str, Any]], fields: List[str] = CSV_FIELDS) -> bool:
        """
        写出 CSV

        Args:
            rows: 行字典
            fields: 列顺序

        Returns:
            bool: 写入是否成功
        """
        return self._write_text(render_csv(rows, fields), "CSV 报告")

    def write_json(self, data: Any) -> bool:
        return self._write_text(render_json(data), "JSON 报告")
