from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of an exhaustive check: violations plus the number of
    individual law instances that were evaluated."""

    violations: list[str] = field(default_factory=list)
    checks: int = 0
    support: str = ""

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, message: str):
        self.violations.append(message)

    def check(self, condition: bool, message) -> bool:
        self.checks += 1
        if not condition:
            self.violations.append(message() if callable(message) else message)
        return condition

    def extend(self, other: Report):
        self.violations.extend(other.violations)
        self.checks += other.checks

    def summary(self) -> str:
        if self.ok:
            return f"OK ({self.checks} checks)"
        return f"FAILED ({len(self.violations)} violations in {self.checks} checks)"

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checks": self.checks,
            "support": self.support,
            "violations": list(self.violations),
        }

    def __str__(self):
        lines = [self.summary()]
        if self.support:
            lines.append(f"support: {self.support}")
        lines.extend(f"  {v}" for v in self.violations)
        return "\n".join(lines)
