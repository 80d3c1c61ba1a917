"""Pass/fail reports with serialized witnesses.

Every validator returns a Report: one Check per verified identity, carrying
the first counterexample found (inputs included) when it fails.  Reports
are deterministic for a fixed instance, seed and trial count, and their
JSON form is canonical so CI runs can be compared byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    witness: dict | None = None

    def to_json(self) -> dict:
        out: dict = {"name": self.name, "status": "pass" if self.ok else "fail"}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, witness: dict | None = None):
        self.checks.append(Check(name, ok, witness if not ok else None))

    def check_named(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.ok, c.witness))

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "meta": dict(sorted(self.meta.items())),
            "checks": [c.to_json() for c in self.checks],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def summary(self) -> str:
        lines = []
        for c in self.checks:
            lines.append(f"{'PASS' if c.ok else 'FAIL'} {c.name}")
        return "\n".join(lines)
