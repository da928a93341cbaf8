from dataclasses import dataclass, field
from typing import Any, Dict, Optional


@dataclass
class CheckReport:
    """单项校验的结果"""
    check: str
    bound: float
    observed: float
    passed: bool
    stderr: Optional[float] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "bound": self.bound,
            "observed": self.observed,
            "stderr": self.stderr,
            "pass": self.passed,
            "details": self.details,
        }
