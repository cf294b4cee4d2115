"""Deterministic JSON reports and their rich summaries."""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field
from rich.console import Console
from rich.table import Table

from stringnet.core import exact
from stringnet.core.morphism import Morphism

REPORT_VERSION = 1


class Report(BaseModel):
    version: int = Field(default=REPORT_VERSION, description="Report format version.")
    command: str = Field(description="The command that produced the report.")
    arguments: Dict[str, Any] = Field(default_factory=dict, description="Echo of the inputs, paths as given.")
    backend: Optional[str] = Field(default=None, description="Backend id.")
    fingerprint: Optional[str] = Field(default=None, description="SHA-256 of the canonical backend data.")
    field: str = Field(description="Scalar field.")
    verdict: str = Field(description="accept, reject or a short result word.")
    exit_code: int = Field(description="Process exit code.")
    result: Dict[str, Any] = Field(default_factory=dict, description="Command specific payload.")

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def morphism_payload(f: Morphism) -> Dict[str, Any]:
    return {"dom": str(f.dom), "codom": str(f.codom), "matrix": exact.render(f.matrix)}


def write_report(report: Report, out: Optional[Path]) -> str:
    text = report.to_json()
    if out is None:
        print(text, end="")
    else:
        Path(out).write_text(text, encoding="utf-8")
    return text


def summary_table(report: Report) -> Table:
    table = Table(title=f"stringnet {report.command}")
    table.add_column("key", justify="right", style="cyan", no_wrap=True)
    table.add_column("value", style="magenta")
    table.add_row("backend", str(report.backend))
    table.add_row("field", report.field)
    table.add_row("verdict", report.verdict)
    for key, value in sorted(report.result.items()):
        if isinstance(value, (int, str, bool)):
            table.add_row(key, str(value))
        elif isinstance(value, list) and all(isinstance(v, (int, str)) for v in value):
            table.add_row(key, ", ".join(str(v) for v in value) or "-")
    return table


def print_summary(report: Report, console: Optional[Console] = None, extra: Optional[List[str]] = None) -> None:
    console = console or Console(stderr=True)
    console.print(summary_table(report))
    for line in extra or []:
        console.print(line)
