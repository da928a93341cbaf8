import json
from itertools import product
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..utils.logger import logger
from .defaults import VARIANTS, ExplicitDefaults, get_variant_defaults
from .settings import _to_int, parse_int_list, parse_str_list


class SweepGrid:
    """sweep 命令使用的参数网格"""

    def __init__(self):
        self.n: List[int] = [2 ** 14]
        self.k: List[int] = [16, 32, 64]
        # None 表示取各变体的默认值
        self.C: Optional[List[int]] = None
        self.Cprime: Optional[List[int]] = None
        self.Ctil: Optional[List[int]] = None
        self.variant: List[str] = ["explicit", "hashed", "saffron"]
        self.trials: int = 100

    def update(self, values: Dict[str, Any]):
        """用字典（JSON 文件或命令行参数）覆盖网格中的字段，None 表示保持原值"""
        for name in ("n", "k", "C", "Cprime", "Ctil"):
            if values.get(name) is not None:
                setattr(self, name, parse_int_list(values[name]))
        if values.get("variant") is not None:
            variants = parse_str_list(values["variant"])
            unknown = [v for v in variants if v not in VARIANTS]
            if unknown:
                raise ValueError(f"未知变体: {', '.join(unknown)}")
            self.variant = variants
        if values.get("trials") is not None:
            self.trials = _to_int(values["trials"], self.trials)

    def _axis_values(self, name: str, defaults) -> List[int]:
        """未覆盖的参数取变体默认值；不影响该变体设计的参数只保留第一个取值"""
        values = getattr(self, name)
        if values is None:
            values = [getattr(defaults, name, getattr(ExplicitDefaults(), name))]
        if name not in defaults.axes:
            values = values[:1]
        return values

    def cells(self) -> List[Dict[str, Any]]:
        """按 variant、n、k、C、Cprime、Ctil 的顺序展开全部网格单元"""
        cells = []
        for variant in self.variant:
            defaults = get_variant_defaults(variant)
            axes = [self._axis_values(name, defaults) for name in ("C", "Cprime", "Ctil")]
            for n in self.n:
                for k in self.k:
                    for C, Cprime, Ctil in product(*axes):
                        cells.append({
                            "variant": variant, "n": n, "k": k,
                            "C": C, "Cprime": Cprime, "Ctil": Ctil,
                        })
        return cells

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "C": self.C,
            "Cprime": self.Cprime,
            "Ctil": self.Ctil,
            "variant": self.variant,
            "trials": self.trials,
        }


class GridConfigManager:
    """从 JSON 文件加载 sweep 网格"""

    def __init__(self, grid_file: Optional[str] = None):
        self.grid_file = Path(grid_file) if grid_file else None
        self.grid = SweepGrid()
        if self.grid_file is not None:
            self.load_config()

    def _safe_file_operation(self, operation_func, operation_name: str, default_value=None):
        """安全的文件操作包装器"""
        try:
            return operation_func()
        except Exception as e:
            logger.error(f"{operation_name}失败: {e}")
            return default_value

    def load_config(self) -> bool:
        """从文件加载网格配置，文件缺失或无法读取时保留默认网格"""
        def _load():
            if not self.grid_file.exists():
                logger.warning(f"网格配置文件不存在: {self.grid_file}，使用默认网格")
                return False
            with open(self.grid_file, "r", encoding="utf-8") as f:
                config = json.load(f)
            if not isinstance(config, dict):
                raise ValueError("网格配置必须是 JSON 对象")
            self.grid.update(config)
            logger.info(f"已加载网格配置: {self.grid_file}")
            return True

        return self._safe_file_operation(_load, "加载网格配置", False)
