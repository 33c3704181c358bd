"""
Verification report models.
"""
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from graphoplex.models.common import Document, Window


class Failure(BaseModel):
    check: str
    witness: Dict[str, Any] = {}
    message: str = ""

    class Config:
        from_attributes = True


class VerificationReport(Document):
    suite: str
    species: str
    window: Optional[Window] = None
    passed: bool = Field(default=True, alias="pass")
    checked: int = 0
    failures: List[Failure] = []

    def fail(self, check: str, message: str = "", **witness: Any) -> None:
        self.failures.append(Failure(check=check, witness=witness, message=message))
        self.passed = False

    def merge(self, other: "VerificationReport") -> None:
        self.checked += other.checked
        for failure in other.failures:
            self.failures.append(failure)
        self.passed = self.passed and other.passed


class VerificationRun(Document):
    species: str
    passed: bool = Field(default=True, alias="pass")
    reports: List[VerificationReport] = []

    def add(self, report: VerificationReport) -> None:
        self.reports.append(report)
        self.passed = self.passed and report.passed
