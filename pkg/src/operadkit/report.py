from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Outcome of a verification: how many instances ran and which failed."""

    name: str
    checked: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    limit: int = 50

    @property
    def ok(self) -> bool:
        return not self.failures and self.data.get("ok", True)

    def check(self, condition: bool, *instance: Any) -> bool:
        self.checked += 1
        if not condition:
            self.fail(*instance)
        return condition

    def fail(self, *instance: Any) -> None:
        if len(self.failures) < self.limit:
            self.failures.append(instance)
        else:
            self.data["truncated_failures"] = self.data.get("truncated_failures", 0) + 1

    def merge(self, other: "Report") -> "Report":
        self.checked += other.checked
        self.skipped += other.skipped
        for f in other.failures:
            self.fail(other.name, *f)
        if not other.ok and not other.failures:
            self.fail(other.name, "failed")
        return self

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "skipped": self.skipped,
            "failures": [[repr(x) if not isinstance(x, (str, int)) else x for x in f]
                         for f in self.failures],
            "data": {k: v for k, v in self.data.items()},
        }

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        line = f"{status} {self.name}: {self.checked} checked"
        if self.skipped:
            line += f", {self.skipped} skipped (truncation)"
        if self.failures:
            line += f", {len(self.failures)} failures; first: {self.failures[0]!r}"
        return line
