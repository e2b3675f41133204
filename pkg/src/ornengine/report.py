"""Outcome of an exhaustive check: violations are data, not exceptions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    name: str
    violations: list[str] = field(default_factory=list)
    stats: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def fail(self, message: str) -> None:
        self.violations.append(message)

    def merge(self, other: Report, prefix: str = "") -> None:
        self.violations.extend(prefix + v for v in other.violations)

    def to_record(self) -> dict[str, Any]:
        record: dict[str, Any] = {"status": "pass" if self.ok else "fail", **self.stats}
        if not self.ok:
            record["violations"] = len(self.violations)
            record["counterexamples"] = self.violations[:3]
        return record

    def __bool__(self) -> bool:
        return self.ok
