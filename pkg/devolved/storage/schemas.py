"""
Artifact schemas.

Every file the CLI reads or writes has a pydantic model here. JSON is written
with sorted keys and a fixed indent so equal artifacts are byte-identical.
"""

import json
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from devolved._core.bounds import BoundResult
from devolved._core.claims import ClaimResult
from devolved._core.construction import BlockPlan
from devolved._core.essentiality import EssentialityReport
from devolved._core.sets import IntegerSet

JSON_INDENT = 2


def dump_json(document: BaseModel) -> str:
    """Canonical JSON text of a document (sorted keys, trailing newline)."""
    return json.dumps(document.model_dump(mode="json"), sort_keys=True, indent=JSON_INDENT) + "\n"


class _Document(BaseModel):
    model_config = ConfigDict(extra="forbid")


class SetDocument(_Document):
    """{"limit": N, "runs": [[a, b, step], ...]}, meaning the union of {a, a+step, ..., <= b}."""
    limit: int = Field(ge=0)
    runs: List[Tuple[int, int, int]] = Field(default_factory=list)

    @field_validator("runs")
    @classmethod
    def _check_runs(cls, runs):
        for a, b, step in runs:
            if a < 0 or step < 1 or b < a:
                raise ValueError(f"run [{a}, {b}, {step}] needs 0 <= a <= b and step >= 1")
        return runs

    @model_validator(mode="after")
    def _runs_fit(self):
        for a, b, step in self.runs:
            if b > self.limit:
                raise ValueError(f"run [{a}, {b}, {step}] exceeds limit {self.limit}")
        return self

    @classmethod
    def from_set(cls, S: IntegerSet) -> "SetDocument":
        return cls(limit=S.limit, runs=[tuple(run) for run in S.runs()])

    def to_set(self) -> IntegerSet:
        return IntegerSet.from_runs(self.runs, self.limit)


class IntervalDocument(_Document):
    kind: Literal["I"]
    r: int = Field(ge=0)
    R: int = Field(ge=0)


class ProgressionDocument(_Document):
    kind: Literal["J"]
    s: int = Field(ge=0)
    S: int = Field(ge=0)
    c: int = Field(ge=0)
    d: int = Field(ge=2)
    q: int = Field(ge=1)
    t: int = Field(ge=1)


BlockDocument = Annotated[Union[IntervalDocument, ProgressionDocument], Field(discriminator="kind")]


class PlanDocument(_Document):
    """{"h": h, "blocks": [{"kind": "I", ...} | {"kind": "J", ...}, ...]}"""
    h: int = Field(ge=2)
    blocks: List[BlockDocument] = Field(min_length=1)

    @classmethod
    def from_plan(cls, plan: BlockPlan) -> "PlanDocument":
        return cls.model_validate(plan.to_dict())

    def to_plan(self) -> BlockPlan:
        """Rebuild the plan; structural invariants are re-checked."""
        return BlockPlan.from_dict(self.model_dump())


class ReportDocument(_Document):
    subset: List[int]
    gap: int = Field(ge=0)
    essential: bool
    witnesses: Dict[str, int] = Field(default_factory=dict)
    cutoff_stable: bool = True

    @classmethod
    def from_report(cls, report: EssentialityReport) -> "ReportDocument":
        return cls.model_validate(report.to_dict())


class EssentialityDocument(_Document):
    """Output of an essential-subset enumeration."""
    k: int = Field(ge=1)
    tail_cutoff: int = Field(ge=0)
    head_bound: int = Field(ge=0)
    reports: List[ReportDocument]
    gaps_pairwise_coprime: bool


class BoundDocument(_Document):
    k: int = Field(ge=1)
    h: int = Field(ge=1)
    phi: int = Field(ge=0)
    primorial_at_phi: int = Field(ge=1)
    first_failure: int = Field(ge=1)

    @classmethod
    def from_result(cls, result: BoundResult) -> "BoundDocument":
        return cls.model_validate(result.to_dict())


class ClaimDocument(_Document):
    claim: int = Field(ge=1, le=2)
    n: int = Field(ge=1)
    holds: bool
    window: int = Field(ge=0)

    @classmethod
    def from_result(cls, result: ClaimResult) -> "ClaimDocument":
        return cls.model_validate(result.to_dict())


class SkippedDocument(_Document):
    """A check left out because its window exceeds max_window."""
    claim: int = Field(ge=1, le=2)
    n: int = Field(ge=1)
    window: int = Field(ge=0)


class VerifyDocument(_Document):
    """Claim results for one plan, plus the checks skipped for their window size."""
    h: int = Field(ge=2)
    blocks: int = Field(ge=0)
    results: List[ClaimDocument]
    all_hold: bool
    max_window: Optional[int] = Field(default=None, ge=0)
    skipped: List[SkippedDocument] = Field(default_factory=list)


class E4Document(_Document):
    c: int = Field(ge=0)
    d: int = Field(ge=2)
    m: int = Field(ge=1)
    found: bool
    hits: List[int]
    blocks_scanned: int = Field(ge=0)
    conclusive: bool


class SumsetDocument(_Document):
    h: int = Field(ge=1)
    sumset: SetDocument


class BasisCheckDocument(_Document):
    h: int = Field(ge=1)
    lo: int = Field(ge=0)
    hi: int = Field(ge=0)
    is_basis: bool


class SpotCheckDocument(_Document):
    limit: int = Field(ge=0)
    removed: int = Field(ge=0)
    probes: List[Tuple[int, int]]
    m: int = Field(ge=1)
    holds: bool


__all__ = [
    "JSON_INDENT",
    "dump_json",
    "SetDocument",
    "IntervalDocument",
    "ProgressionDocument",
    "PlanDocument",
    "ReportDocument",
    "EssentialityDocument",
    "BoundDocument",
    "ClaimDocument",
    "VerifyDocument",
    "E4Document",
    "SumsetDocument",
    "BasisCheckDocument",
    "SpotCheckDocument",
]
