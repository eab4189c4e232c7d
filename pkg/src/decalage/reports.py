from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckReport:
    """Outcome of one check: pass flag, counterexamples, and free-form detail."""

    name: str
    passed: bool = True
    failures: list[dict[str, Any]] = field(default_factory=list)
    detail: dict[str, Any] = field(default_factory=dict)
    refused: str | None = None

    def fail(self, **info) -> None:
        self.passed = False
        self.failures.append(info)

    def to_json(self) -> dict:
        out = {"check": self.name, "pass": self.passed, "failures": self.failures, "detail": self.detail}
        if self.refused is not None:
            out["refused"] = self.refused
        return out
