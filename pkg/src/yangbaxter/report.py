"""Verification reports: every failure carries the basis tuple that witnesses it."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Failure:
    witness: tuple
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.witness}: {self.detail}" if self.detail else str(self.witness)


@dataclass
class VerificationReport:
    """Outcome of an exhaustive identity check.

    ``checked`` counts the tuples (or cells, samples) examined; an empty
    ``failures`` list means the property holds on all of them.
    """

    name: str
    checked: int = 0
    failures: list[Failure] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    unit: str = "tuples"

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.passed

    def fail(self, witness, detail: str = "") -> None:
        self.failures.append(Failure(tuple(witness) if isinstance(witness, (tuple, list)) else (witness,), detail))

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        self.checked += other.checked
        self.failures.extend(other.failures)
        self.notes.extend(other.notes)
        return self

    @property
    def first(self) -> Failure | None:
        return self.failures[0] if self.failures else None

    def summary(self) -> str:
        if self.passed:
            return f"PASS {self.name} ({self.checked} {self.unit} checked)"
        return (
            f"FAIL {self.name} ({len(self.failures)} of {self.checked} {self.unit} failed; "
            f"first witness {self.failures[0]})"
        )

    def to_json_obj(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "unit": self.unit,
            "failures": [{"witness": list(f.witness), "detail": f.detail} for f in self.failures],
            "notes": list(self.notes),
        }


def combine(name: str, *reports: VerificationReport) -> VerificationReport:
    """Merge sub-reports, prefixing failure details with the sub-report name."""
    out = VerificationReport(name)
    for r in reports:
        out.checked += r.checked
        out.failures.extend(Failure(f.witness, f"[{r.name}] {f.detail}") for f in r.failures)
        out.notes.extend(r.notes)
    return out
