from __future__ import annotations

from dataclasses import asdict, dataclass, field


@dataclass
class IdentityReport:
    """Both sides of an exact identity at one level, with failing witnesses."""

    name: str
    n: int
    lhs: int
    rhs: int
    holds: bool
    witnesses: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class Verification:
    """A batch of identity checks; passes iff every check holds."""

    polygon: str
    checks: list[IdentityReport] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.checks)

    def failures(self) -> list[IdentityReport]:
        return [c for c in self.checks if not c.holds]

    def to_dict(self) -> dict:
        return {
            "polygon": self.polygon,
            "passed": self.passed,
            "notes": list(self.notes),
            "checks": [c.to_dict() for c in self.checks],
        }
