"""Pass/fail reports shared by the validators and the check suites."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: str | None = None


@dataclass
class ValidationReport:
    """An ordered list of named checks about one subject.

    ``digest`` is a stable fingerprint of the inputs so that identical runs
    produce byte-identical reports.
    """

    subject: str
    digest: str = ""
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: str | None = None):
        self.checks.append(CheckResult(name, bool(passed), None if passed else witness))

    def extend(self, other: "ValidationReport"):
        for c in other.checks:
            self.checks.append(
                CheckResult(f"{other.subject}: {c.name}", c.passed, c.witness)
            )

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "inputs_digest": self.digest,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "witness": c.witness}
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"== {self.subject} ({'PASS' if self.passed else 'FAIL'})"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            msg = f"  {mark} {c.name}"
            if c.witness:
                msg += f"  [{c.witness}]"
            lines.append(msg)
        return "\n".join(lines)


def digest_of(*parts) -> str:
    """Stable hex fingerprint of a sequence of stringable inputs."""
    h = hashlib.sha256()
    for p in parts:
        h.update(str(p).encode())
        h.update(b"\x00")
    return h.hexdigest()[:16]
