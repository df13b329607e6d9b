"""Mirrorforge Reports

Structured results of verification runs.

Every check a command performs becomes a Check record inside a Report. Reports
render deterministically to JSON (sorted keys, no timestamps) and to a
markdown table.

Author: Sackey Ezekiel Etrue (https://github.com/djoezeke) & Mirrorforge Contributors
License: MIT
"""

import json
from dataclasses import dataclass, field
from typing import Any, Optional

__all__ = ["Check", "Report", "jsonable"]


def jsonable(value: Any) -> Any:
    """Best-effort conversion of exact values into JSON-friendly data."""
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, dict):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if hasattr(value, "to_json"):
        return value.to_json()
    return str(value)


@dataclass
class Check:
    """One named verification step."""

    name: str
    passed: bool
    detail: str = ""
    witness: Optional[Any] = None
    data: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        result = {"name": self.name, "passed": bool(self.passed), "detail": self.detail}
        if self.witness is not None:
            result["witness"] = jsonable(self.witness)
        if self.data:
            result["data"] = jsonable(self.data)
        return result


@dataclass
class Report:
    """
    Ordered collection of checks with a parameter header.

    Attributes:
        title (str): what was checked.
        parameters (dict): truncation parameters and inputs echoed into the header.
        checks (list[Check]): results in execution order.
        warnings (list[str]): non-fatal anomalies.
        data (dict): computed quantities (dimensions, critical points, ...).
    """

    title: str
    parameters: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def add(self, name: str, passed: bool, detail: str = "", witness: Any = None, **data) -> Check:
        check = Check(name, bool(passed), detail, witness, data)
        self.checks.append(check)
        return check

    def extend(self, other: "Report", prefix: str = ""):
        """Append the checks and warnings of another report."""
        for check in other.checks:
            self.checks.append(Check(prefix + check.name, check.passed, check.detail, check.witness, check.data))
        self.warnings.extend(other.warnings)

    def check(self, name: str) -> Check:
        for item in self.checks:
            if item.name == name:
                return item
        raise KeyError(name)

    def failures(self) -> list:
        return [check for check in self.checks if not check.passed]

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "parameters": jsonable(self.parameters),
            "checks": [check.to_dict() for check in self.checks],
            "warnings": list(self.warnings),
            "data": jsonable(self.data),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_markdown(self) -> str:
        lines = [f"# {self.title}", ""]
        if self.parameters:
            lines += ["| parameter | value |", "|---|---|"]
            lines += [f"| {key} | {value} |" for key, value in sorted(self.parameters.items())]
            lines.append("")
        lines += ["| check | result | detail |", "|---|---|---|"]
        for check in self.checks:
            lines.append(f"| {check.name} | {'pass' if check.passed else 'FAIL'} | {check.detail} |")
        for warning in self.warnings:
            lines.append(f"\n> warning: {warning}")
        if self.data:
            lines += ["", "```json", json.dumps(jsonable(self.data), indent=2, sort_keys=True), "```"]
        return "\n".join(lines) + "\n"

    def render(self, fmt: str = "json") -> str:
        return self.to_markdown() if fmt == "markdown" else self.to_json()
