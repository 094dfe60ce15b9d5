"""Three-valued verdicts returned by the deciders."""

from __future__ import annotations

from dataclasses import dataclass, field

EQUAL = "Equal"
NOT_EQUAL = "NotEqual"
INCONCLUSIVE = "Inconclusive"

# machine-readable reasons for Inconclusive
STAR_VIOLATED = "star-violated"
FIELD_HYPOTHESES = "field-hypotheses"
TORSION_SCOPE = "torsion-out-of-scope"


@dataclass(frozen=True)
class Decision:
    verdict: str
    reason: str | None = None
    rule: str = ""
    evidence: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.verdict not in (EQUAL, NOT_EQUAL, INCONCLUSIVE):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if (self.verdict == INCONCLUSIVE) != (self.reason is not None):
            raise ValueError("a reason is required exactly for Inconclusive")

    @property
    def decided(self) -> bool:
        return self.verdict != INCONCLUSIVE

    @property
    def is_equal(self) -> bool:
        return self.verdict == EQUAL

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "rule": self.rule, "evidence": self.evidence}
        if self.reason is not None:
            out["reason"] = self.reason
        return out


def equal(rule: str, **evidence) -> Decision:
    return Decision(EQUAL, None, rule, evidence)


def not_equal(rule: str, **evidence) -> Decision:
    return Decision(NOT_EQUAL, None, rule, evidence)


def inconclusive(reason: str, rule: str, **evidence) -> Decision:
    return Decision(INCONCLUSIVE, reason, rule, evidence)
