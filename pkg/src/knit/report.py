"""Pass/fail reports with a concrete counterexample per failed check."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: Any = None
    detail: str = ""

    def __str__(self) -> str:
        status = "pass" if self.passed else "FAIL"
        text = f"{self.name}: {status}"
        if self.witness is not None:
            text += f" at {self.witness}"
        if self.detail:
            text += f" ({self.detail})"
        return text


@dataclass(frozen=True)
class Report:
    checks: tuple[Check, ...] = ()
    notes: tuple[str, ...] = field(default=())

    @classmethod
    def of(cls, checks: Iterable[Check], notes: Iterable[str] = ()) -> "Report":
        return cls(tuple(checks), tuple(notes))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    @property
    def first_failure(self) -> Check | None:
        for c in self.checks:
            if not c.passed:
                return c
        return None

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self) -> list[str]:
        return [c.name for c in self.checks]

    def summary(self) -> str:
        bad = self.first_failure
        return "all checks pass" if bad is None else str(bad)

    def __str__(self) -> str:
        lines = [str(c) for c in self.checks]
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)
