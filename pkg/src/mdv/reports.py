"""Check reports shared by every verification suite.

A report body is ``{check, inputs, status, details}``; it never contains
timing data so that identical inputs give byte-identical output.  Wall time
travels in a separate envelope.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

STATUSES = ("pass", "fail", "error")


def jsonable(obj: Any) -> Any:
    """Convert nested results to JSON-ready data; rationals become "num/den" strings."""
    from .poly import Polynomial

    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, Polynomial):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj, key=repr) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(v) for v in items]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


@dataclass
class CheckReport:
    check: str
    inputs: dict
    status: str
    details: dict = field(default_factory=dict)
    wall_time: float | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "fail" and "counterexample" not in self.details:
            raise ValueError("a failing report must carry a counterexample")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def body(self) -> dict:
        return {
            "check": self.check,
            "inputs": jsonable(self.inputs),
            "status": self.status,
            "details": jsonable(self.details),
        }

    def to_json(self) -> dict:
        return self.body()

    def dumps(self) -> str:
        return json.dumps(self.body(), sort_keys=True)

    def envelope(self) -> dict:
        return {"report": self.body(), "wall_time": self.wall_time}


def status_of(ok: bool) -> str:
    return "pass" if ok else "fail"
