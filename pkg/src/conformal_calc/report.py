"""Pass/fail reports with first-failure witnesses."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable


@dataclass(frozen=True)
class Witness:
    tuple: tuple[str, ...]
    residual: Any  # ModElem, Poly, or a tuple of them

    def render(self) -> str:
        return f"({', '.join(self.tuple)}) residual: {self.residual}"

    def to_dict(self) -> dict:
        res = self.residual
        if hasattr(res, "to_dict"):
            res = res.to_dict()
        else:
            res = str(res)
        return {"tuple": list(self.tuple), "residual": res}


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: Witness | None = None
    note: str = ""

    def __post_init__(self):
        if self.passed and self.witness is not None:
            raise ValueError("a passing check carries no witness")

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def render(self) -> str:
        line = f"{self.verdict}  {self.name}"
        if self.note:
            line += f"  [{self.note}]"
        if self.witness is not None:
            line += f"\n      witness {self.witness.render()}"
        return line

    def to_dict(self) -> dict:
        d = {"axiom": self.name, "verdict": self.verdict}
        if self.note:
            d["note"] = self.note
        if self.witness is not None:
            d["witness"] = self.witness.to_dict()
        return d


@dataclass
class Report:
    subject: str = ""
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: Witness | None = None, note: str = "") -> Check:
        c = Check(name, bool(passed), None if passed else witness, note)
        self.checks.append(c)
        return c

    def run(self, name: str, cases: Iterable[tuple[tuple[str, ...], Any]], note: str = "") -> Check:
        """Record ``name``; ``cases`` yields (tuple, residual) and the first nonzero residual fails."""
        for tup, residual in cases:
            if not _is_zero(residual):
                return self.add(name, False, Witness(tuple(tup), residual), note)
        return self.add(name, True, None, note)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness, c.note))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def verdicts(self) -> dict[str, bool]:
        return {c.name: c.passed for c in self.checks}

    def render(self) -> str:
        head = f"== {self.subject}" if self.subject else "=="
        lines = [head] + ["  " + c.render() for c in self.checks]
        return "\n".join(lines)

    __str__ = render

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


def _is_zero(residual) -> bool:
    if isinstance(residual, (tuple, list)):
        return all(_is_zero(r) for r in residual)
    if hasattr(residual, "is_zero"):
        return residual.is_zero()
    return not residual
