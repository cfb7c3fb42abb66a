"""
Report schema for the analyze command.

Sections are plain JSON-compatible dictionaries produced by each pipeline
phase's to_dict(). Serialization sorts keys, so a fixed input and fixed
settings give byte-identical output; timings are only written on request.
"""

import json
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

SCHEMA_VERSION = "1.0"
TOOL_VERSION = "0.1.0"


class ExitCode(int, Enum):
    OK = 0
    USAGE = 1
    UNDECIDED = 2
    VIOLATION = 3


class AnalysisReport(BaseModel):
    schema_version: str = SCHEMA_VERSION
    tool_version: str = TOOL_VERSION
    input: Dict[str, Any]
    settings: Dict[str, Any]
    normalization: Optional[Dict[str, Any]] = None
    F: Optional[Dict[str, Any]] = None
    chain: Optional[Dict[str, Any]] = None
    phi: Optional[Dict[str, Any]] = None
    bounds: Optional[Dict[str, Any]] = None
    phi_report: Optional[Dict[str, Any]] = None
    t3_case: Optional[Dict[str, Any]] = None
    fans: Optional[Dict[str, Any]] = None
    flags: Dict[str, Any] = Field(default_factory=dict)
    errors: List[str] = Field(default_factory=list)
    violations: List[str] = Field(default_factory=list)
    status: str = "ok"
    exit_code: int = ExitCode.OK.value
    timings: Dict[str, float] = Field(default_factory=dict)

    def to_json(self, include_timings: bool = False) -> str:
        data = self.model_dump()
        if not include_timings:
            data.pop("timings")
        return json.dumps(data, sort_keys=True, indent=2)


def exit_status(violations: List[str], decided: bool) -> ExitCode:
    if violations:
        return ExitCode.VIOLATION
    if not decided:
        return ExitCode.UNDECIDED
    return ExitCode.OK


def diagnostic_bundle(report: AnalysisReport) -> str:
    """Everything needed to reproduce a theorem violation."""
    bundle = {
        "violations": report.violations,
        "input": report.input,
        "settings": report.settings,
        "normalization": report.normalization,
        "F": report.F,
        "chain": report.chain,
        "phi": report.phi,
        "bounds": report.bounds,
        "phi_report": report.phi_report,
        "fans": report.fans,
        "tool_version": report.tool_version,
    }
    return json.dumps(bundle, sort_keys=True, indent=2)
