"""Verification reports and their canonical serialization.

Every checker returns a CheckResult: a pass/fail flag, a list of violation
entries (law, sample, indices, lhs, rhs) and metadata such as the orders the
check ran at.  A Report bundles the results of one CLI command.  Structured
output is canonical JSON -- sorted keys, exact scalar strings, no floats --
so identical inputs produce byte-identical reports.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckResult:
    name: str
    passed: bool
    entries: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "entries": self.entries,
            "meta": {k: self.meta[k] for k in sorted(self.meta)},
        }


def success(name, **meta) -> CheckResult:
    return CheckResult(name, True, [], meta)


def failure(name, entries, **meta) -> CheckResult:
    return CheckResult(name, False, entries, meta)


@dataclass
class Report:
    command: str
    inputs: dict
    checks: list = field(default_factory=list)
    payload: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: CheckResult):
        self.checks.append(check)
        return check

    def to_dict(self):
        return {
            "command": self.command,
            "inputs": self.inputs,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "payload": self.payload,
        }

    def to_structured(self) -> str:
        return canonical_json(self.to_dict())

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            meta = " ".join(f"{k}={c.meta[k]}" for k in sorted(c.meta))
            lines.append(f"  [{status}] {c.name}" + (f"  ({meta})" if meta else ""))
            for e in c.entries[:20]:
                detail = " ".join(f"{k}={e[k]}" for k in sorted(e))
                lines.append(f"         {detail}")
            if len(c.entries) > 20:
                lines.append(f"         ... {len(c.entries) - 20} more")
        for key in sorted(self.payload):
            lines.append(f"  {key}: {_text_value(self.payload[key])}")
        lines.append(f"result: {'pass' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _text_value(v):
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_text_value(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_text_value(v[k])}" for k in sorted(v)) + "}"
    return str(v)


def canonical_json(obj) -> str:
    """Deterministic JSON: sorted keys, compact separators, newline-terminated."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
