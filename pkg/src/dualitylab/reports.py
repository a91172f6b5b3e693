"""Verdict records and deterministic serialization helpers."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path


@dataclass(frozen=True)
class CheckResult:
    """One named pass/fail with the worst numeric residual seen."""

    name: str
    passed: bool
    residual: float = 0.0
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "residual": self.residual}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class CheckList:
    """An ordered bundle of check results."""

    checks: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, residual: float = 0.0, detail: str = ""):
        self.checks.append(CheckResult(name=name, passed=bool(passed), residual=float(residual), detail=detail))

    def extend(self, results):
        self.checks.extend(results)

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> list[dict]:
        return [c.to_json() for c in self.checks]


def dump_json(payload: dict) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_json(path: Path, payload: dict) -> None:
    Path(path).write_text(dump_json(payload), encoding="utf-8")


def write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
