"""Three-valued answers for semi-decidable questions."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Iterable


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, flag: bool) -> Verdict:
        return cls.YES if flag else cls.NO

    def negate(self) -> Verdict:
        if self is Verdict.UNKNOWN:
            return self
        return Verdict.NO if self is Verdict.YES else Verdict.YES


def conjunction(verdicts: Iterable[Verdict]) -> Verdict:
    """NO if any leg is NO, YES if all are YES, UNKNOWN otherwise."""
    out = Verdict.YES
    for v in verdicts:
        if v is Verdict.NO:
            return v
        if v is Verdict.UNKNOWN:
            out = v
    return out


@dataclass(frozen=True)
class OracleAnswer:
    verdict: Verdict
    certificate: Any = None
    budget_spent: int = 0

    def __post_init__(self):
        if self.verdict is Verdict.UNKNOWN and self.certificate is not None:
            raise ValueError("an Unknown answer carries no certificate")

    @classmethod
    def yes(cls, certificate: Any = None, budget_spent: int = 0) -> OracleAnswer:
        return cls(Verdict.YES, certificate, budget_spent)

    @classmethod
    def no(cls, certificate: Any = None, budget_spent: int = 0) -> OracleAnswer:
        return cls(Verdict.NO, certificate, budget_spent)

    @classmethod
    def unknown(cls, budget_spent: int = 0) -> OracleAnswer:
        return cls(Verdict.UNKNOWN, None, budget_spent)

    @property
    def is_yes(self) -> bool:
        return self.verdict is Verdict.YES

    @property
    def is_no(self) -> bool:
        return self.verdict is Verdict.NO

    @property
    def is_unknown(self) -> bool:
        return self.verdict is Verdict.UNKNOWN
