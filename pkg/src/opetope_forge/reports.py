from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Violation:
    law: str
    witness: Any
    detail: str = ""

    def __str__(self):
        return f"{self.law}: {self.detail} (witness: {self.witness!r})"


@dataclass
class Report:
    """Outcome of a bounded law check.  Truthy iff no violations were found."""

    subject: str
    checked: int = 0
    violations: list = field(default_factory=list)
    skipped: int = 0
    limit: int = 20

    def fail(self, law: str, witness: Any, detail: str = "") -> None:
        if len(self.violations) < self.limit:
            self.violations.append(Violation(law, witness, detail))
        else:
            self.skipped += 1

    def tick(self, n: int = 1) -> None:
        self.checked += n

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.passed

    def first_law(self) -> str | None:
        return self.violations[0].law if self.violations else None

    def merge(self, other: "Report") -> "Report":
        self.checked += other.checked
        for v in other.violations:
            self.fail(v.law, v.witness, v.detail)
        self.skipped += other.skipped
        return self

    def summary(self) -> str:
        if self.passed:
            return f"PASS ({self.subject}: {self.checked} checks)"
        return f"FAIL: {self.first_law()} ({self.subject}: {len(self.violations)} violations)"
