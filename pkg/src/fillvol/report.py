"""Pass/fail reports for certificates."""
from __future__ import annotations

from dataclasses import dataclass, field

# float evaluations of exact pieces are compared with this relative slack
CERT_RTOL = 1e-9


def leq(a: float, b: float, rtol: float = CERT_RTOL) -> bool:
    return a <= b + rtol * max(abs(a), abs(b))


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(ok), detail))
        return bool(ok)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def __getitem__(self, name: str) -> bool:
        for c in self.checks:
            if c.name == name:
                return c.ok
        raise KeyError(name)

    def lines(self) -> list[str]:
        return [f"{'PASS' if c.ok else 'FAIL'}  {c.name}" + (f"  ({c.detail})" if c.detail else "") for c in self.checks]

    def as_dict(self) -> dict:
        return {c.name: {"ok": c.ok, "detail": c.detail} for c in self.checks}
