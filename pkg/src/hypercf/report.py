"""Tiny pass/fail report object shared by the verification operations."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class VerifyReport:
    name: str
    checks: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, condition: bool, detail: str) -> None:
        self.checks += 1
        if not condition:
            self.failures.append(detail)

    def note(self, text: str) -> None:
        self.notes.append(text)

    def merge(self, other: "VerifyReport") -> None:
        self.checks += other.checks
        self.failures.extend(f"{other.name}: {f}" for f in other.failures)
        self.notes.extend(other.notes)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checks": self.checks,
            "failures": self.failures,
            "notes": self.notes,
        }

    def raise_if_failed(self):
        from .errors import VerificationError

        if not self.ok:
            raise VerificationError(f"{self.name}: {self.failures[0]}")
        return self
