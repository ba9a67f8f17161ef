"""Structured results for the verification sweeps.

A report is a named list of checks.  A check may be flagged ``expected``,
meaning a failure there is documented behavior (for instance the concavity
sweep in dimension three) and must not fail the run as a whole.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst_margin: float
    at: str
    expected: bool = False

    def __post_init__(self):
        object.__setattr__(self, "passed", bool(self.passed))
        object.__setattr__(self, "worst_margin", float(self.worst_margin))
        object.__setattr__(self, "expected", bool(self.expected))

    def as_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "expected": self.expected,
            "worst_margin": self.worst_margin,
            "at": self.at,
        }


@dataclass(frozen=True)
class VerificationReport:
    suite: str
    n: int
    checks: tuple[CheckResult, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "checks", tuple(self.checks))

    @property
    def passed(self) -> bool:
        """True when every check either passed or is an expected failure."""
        return all(c.passed or c.expected for c in self.checks)

    def as_dict(self):
        return {
            "suite": self.suite,
            "n": self.n,
            "checks": [c.as_dict() for c in self.checks],
            "passed": self.passed,
        }


def merge_reports(suite: str, n: int, reports) -> VerificationReport:
    """Concatenate several reports into one, prefixing check names."""
    checks = []
    for rep in reports:
        for c in rep.checks:
            checks.append(
                CheckResult(
                    name=f"{rep.suite}/{c.name}",
                    passed=c.passed,
                    worst_margin=c.worst_margin,
                    at=c.at,
                    expected=c.expected,
                )
            )
    return VerificationReport(suite=suite, n=n, checks=tuple(checks))
