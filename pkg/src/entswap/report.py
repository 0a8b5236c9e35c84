"""Pass/fail records shared by the verification suites."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class Check:
    """One line of a verification report."""

    name: str
    passed: bool
    deviation: Optional[float] = None
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}"
        if self.deviation is not None:
            text += f" max_dev={self.deviation:.3e}"
        return f"{text} {self.note}" if self.note else text


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, deviation: float, tol: float, note: str = "") -> Check:
        check = Check(name, bool(deviation < tol), float(deviation), note)
        self.checks.append(check)
        return check

    def flag(self, name: str, ok: bool, note: str = "") -> Check:
        check = Check(name, bool(ok), None, note)
        self.checks.append(check)
        return check

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def lines(self) -> list[str]:
        out = [f"# {self.title}"]
        out += [c.line() for c in self.checks]
        out += [f"NOTE {n}" for n in self.notes]
        return out
