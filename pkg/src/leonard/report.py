"""Pass/fail ledgers shared by the admissibility checks and the verifier."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: str | None = None

    def __bool__(self):
        return self.passed

    def to_json(self):
        return {"name": self.name, "pass": self.passed, "witness": self.witness}

    def __str__(self):
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} {self.name}" + (f"  [{self.witness}]" if self.witness else "")


@dataclass
class Report:
    """An ordered list of checks; ``overall`` is their conjunction."""

    checks: list[Check] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.overall

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: "Report") -> "Report":
        self.checks.extend(other.checks)
        return self

    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.passed), None)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self) -> list[str]:
        return [c.name for c in self.checks]

    def to_json(self):
        return {"overall": self.overall, "checks": [c.to_json() for c in self.checks]}

    def __str__(self):
        lines = [str(c) for c in self.checks]
        lines.append("overall: " + ("PASS" if self.overall else "FAIL"))
        return "\n".join(lines)


VerificationReport = Report
