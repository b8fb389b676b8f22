from __future__ import annotations

from typing import Any, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from mfk.config import ENGINE_VERSION


class CheckRecord(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    name: str
    passed: bool = Field(alias="pass")
    detail: Any = None


class Report(BaseModel):
    id: str
    checks: List[CheckRecord] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: Any = None) -> "Report":
        self.checks.append(CheckRecord(name=name, passed=bool(passed), detail=detail))
        return self

    def extend(self, other: "Report", prefix: str = "") -> "Report":
        for c in other.checks:
            self.checks.append(CheckRecord(name=f"{prefix}{c.name}", passed=c.passed, detail=c.detail))
        return self

    def failures(self) -> List[CheckRecord]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return self.model_dump(by_alias=True)


class RunRecord(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    id: str
    passed: bool = Field(alias="pass")
    detail: Any = None
    wall_ms: float = 0.0


class Summary(BaseModel):
    total: int = 0
    passed: int = 0
    failed: int = 0


class RunReport(BaseModel):
    suite: str
    records: List[RunRecord] = Field(default_factory=list)
    summary: Summary = Field(default_factory=Summary)
    engine_version: str = ENGINE_VERSION

    @model_validator(mode="after")
    def _tally(self) -> "RunReport":
        ok = sum(1 for r in self.records if r.passed)
        self.summary = Summary(total=len(self.records), passed=ok, failed=len(self.records) - ok)
        return self

    @property
    def passed(self) -> bool:
        return self.summary.failed == 0

    def to_dict(self, with_times: bool = True) -> dict:
        out = self.model_dump(by_alias=True)
        if not with_times:
            for r in out["records"]:
                r.pop("wall_ms", None)
        return out


def merge_runs(suite: str, runs: List[RunReport]) -> RunReport:
    records: List[RunRecord] = []
    for run in runs:
        for r in run.records:
            records.append(RunRecord(id=f"{run.suite}/{r.id}", passed=r.passed, detail=r.detail, wall_ms=r.wall_ms))
    return RunReport(suite=suite, records=records)


def failing_detail(report: Report, limit: Optional[int] = 20) -> dict:
    fails = report.failures()
    return {
        "checks": len(report.checks),
        "failed": [c.model_dump(by_alias=True) for c in fails[:limit]],
    }
