"""Check records shared by every verification routine."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List

__all__ = ["CheckResult", "compare", "all_passed"]


@dataclass
class CheckResult:
    """Outcome of one exact identity check.

    ``witness`` is a nonzero term of ``lhs - rhs`` whenever the check fails.
    """

    name: str
    params: Dict[str, Any]
    passed: bool
    witness: str = ""
    detail: str = ""
    seconds: float = 0.0

    def sort_key(self):
        return (self.name, sorted((k, str(v)) for k, v in self.params.items()))

    def as_record(self, timing: bool = True) -> Dict[str, Any]:
        rec = {
            "check": self.name,
            "params": {k: self.params[k] for k in sorted(self.params)},
            "passed": self.passed,
        }
        if self.witness:
            rec["witness"] = self.witness
        if self.detail:
            rec["detail"] = self.detail
        if timing:
            rec["seconds"] = round(self.seconds, 6)
        return rec


def _witness(diff) -> str:
    if hasattr(diff, "witness"):
        return diff.witness()
    return str(diff)


def compare(name: str, params: Dict[str, Any], lhs, rhs, detail: str = "") -> CheckResult:
    """Exact equality check; the witness is a term of ``lhs - rhs``."""
    diff = lhs - rhs
    ok = not diff
    return CheckResult(name, dict(params), ok, "" if ok else _witness(diff), detail)


def all_passed(results: List[CheckResult]) -> bool:
    return all(r.passed for r in results)
