"""Verdict/witness container shared by every checker."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any, Optional

INFEASIBLE = "infeasible"


@dataclass
class VerificationReport:
    """Outcome of an exhaustive check.

    verdict is True, False or the string "infeasible" (enumeration would
    exceed the configured budget; never a silently truncated answer).  A
    False verdict always carries a witness that re-verifies on its own.
    """

    verdict: Any
    witness: Optional[dict] = None
    checked_count: int = 0
    elapsed: float = 0.0
    detail: dict = dc_field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.verdict is True

    @property
    def infeasible(self) -> bool:
        return self.verdict == INFEASIBLE

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": self.witness,
            "checked_count": self.checked_count,
            "elapsed": self.elapsed,
            "detail": self.detail,
        }
