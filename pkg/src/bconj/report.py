"""Verdict records shared by the verification routines."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Verdict:
    name: str
    passed: bool
    inputs: Any = None
    required_valuation: int | None = None
    achieved_valuation: int | None = None
    witness: Any = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        out: dict = {"name": self.name, "inputs": _jsonable(self.inputs), "pass": self.passed}
        if self.required_valuation is not None:
            out["required_valuation"] = self.required_valuation
        if self.required_valuation is not None or self.achieved_valuation is not None:
            out["achieved_valuation"] = self.achieved_valuation
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.details:
            out["details"] = _jsonable(self.details)
        return out

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = ""
        if self.required_valuation is not None:
            extra = f" valuation {self.achieved_valuation} (need >= {self.required_valuation})"
        return f"[{status}] {self.name} {_short(self.inputs)}{extra}"


def _short(inputs) -> str:
    if isinstance(inputs, (list, tuple)) and all(isinstance(x, tuple) for x in inputs):
        return " ".join("(" + ",".join(map(str, x)) + ")" for x in inputs)
    if isinstance(inputs, dict):
        return " ".join(f"{k}={_short(v)}" for k, v in inputs.items())
    if isinstance(inputs, (list, tuple)):
        return "[" + ",".join(map(str, inputs)) + "]"
    return "" if inputs is None else str(inputs)


def _jsonable(x):
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)
