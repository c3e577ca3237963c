"""Machine-readable run reports.

Reports serialize to JSON with stable key order and 17-significant-digit
numbers (lossless for doubles), or to CSV with one row per result entry.
Timings are kept out of the canonical payload by default so that reruns with
the same seed produce byte-identical files.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field

__all__ = ["ResultEntry", "RunReport", "emit_report", "parse_report", "render_json"]


@dataclass
class ResultEntry:
    name: str
    value: float
    stderr: float | None = None
    tolerance: float | None = None
    passed: bool | None = None

    def validate(self) -> None:
        if self.passed is not None and self.tolerance is None:
            raise ValueError(f"entry {self.name!r} carries a verdict without a tolerance")


@dataclass
class RunReport:
    command: str
    parameters: dict
    results: list[ResultEntry] = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    seed: int | None = None

    def add(self, name, value, stderr=None, tolerance=None, passed=None) -> ResultEntry:
        e = ResultEntry(name, float(value), stderr, tolerance, passed)
        e.validate()
        self.results.append(e)
        return e

    @property
    def all_passed(self) -> bool:
        return all(e.passed is not False for e in self.results)


def _fmt(x) -> str:
    if isinstance(x, bool) or x is None:
        return {True: "true", False: "false", None: "null"}[x]
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return format(x, ".17g")
    if isinstance(x, str):
        return json.dumps(x)
    if isinstance(x, dict):
        inner = ", ".join(f"{json.dumps(str(k))}: {_fmt(v)}" for k, v in x.items())
        return "{" + inner + "}"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    return json.dumps(str(x))


def render_json(report: RunReport, include_timings: bool = False) -> str:
    for e in report.results:
        e.validate()
    payload = {
        "command": report.command,
        "seed": report.seed,
        "parameters": report.parameters,
        "results": [
            {
                "name": e.name,
                "value": e.value,
                "stderr": e.stderr,
                "tolerance": e.tolerance,
                "pass": e.passed,
            }
            for e in report.results
        ],
        "timings": report.timings if include_timings else {},
    }
    return _fmt(payload) + "\n"


def render_csv(report: RunReport) -> str:
    for e in report.results:
        e.validate()
    buf = io.StringIO()
    buf.write("name,value,stderr,tolerance,pass\n")
    for e in report.results:

        def cell(v):
            if v is None:
                return ""
            if isinstance(v, bool):
                return "PASS" if v else "FAIL"
            return format(float(v), ".17g")

        buf.write(f"{e.name},{cell(e.value)},{cell(e.stderr)},{cell(e.tolerance)},{cell(e.passed)}\n")
    return buf.getvalue()


def emit_report(report: RunReport, fmt: str = "json", destination=None,
                include_timings: bool = False) -> str:
    """Render and optionally write the report; returns the rendered text."""
    if fmt == "json":
        text = render_json(report, include_timings=include_timings)
    elif fmt == "csv":
        text = render_csv(report)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if destination is not None:
        with open(destination, "w", encoding="ascii") as fh:
            fh.write(text)
    return text


def parse_report(text: str) -> RunReport:
    """Inverse of render_json; entry-level values compare equal after a round trip."""
    obj = json.loads(text)
    rep = RunReport(
        command=obj["command"],
        parameters=obj["parameters"],
        timings=obj.get("timings", {}),
        seed=obj.get("seed"),
    )
    for e in obj["results"]:
        rep.add(e["name"], e["value"], e.get("stderr"), e.get("tolerance"), e.get("pass"))
    return rep
