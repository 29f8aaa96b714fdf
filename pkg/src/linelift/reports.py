"""Check results and report documents.

Every verdict in a report is traceable to a numeric residual and the
tolerance it was compared against.  Report JSON is canonical: keys sorted,
no timing inside (wall times go to the suite CSV), so a fixed seed yields
byte-identical documents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float
    passed: bool
    detail: Mapping[str, Any] = field(default_factory=dict)

    @staticmethod
    def from_residual(name: str, residual: float, tolerance: float, **detail: Any) -> "CheckResult":
        return CheckResult(
            name=name,
            residual=float(residual),
            tolerance=float(tolerance),
            passed=bool(residual <= tolerance),
            detail=detail,
        )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "detail": _plain(self.detail),
        }


def _plain(value: Any) -> Any:
    """Recursively coerce numpy scalars/arrays into JSON-friendly types."""
    import numpy as np

    if isinstance(value, Mapping):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, (np.complexfloating,)):
        return {"re": float(value.real), "im": float(value.imag)}
    return value


def render_json(document: Mapping[str, Any]) -> str:
    return json.dumps(_plain(document), sort_keys=True, indent=2) + "\n"
