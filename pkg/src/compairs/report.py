"""Check records and their JSON / CSV serialization."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

from . import __version__

STATUSES = ("pass", "fail", "info")


@dataclass
class Check:
    claim_id: str
    parameters: dict
    expected: object
    actual: object
    status: str

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")


def check(claim_id: str, parameters: dict, expected, actual, ok: bool) -> Check:
    return Check(claim_id, parameters, expected, actual, "pass" if ok else "fail")


def info(claim_id: str, parameters: dict, expected, actual) -> Check:
    return Check(claim_id, parameters, expected, actual, "info")


@dataclass
class Report:
    config: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    version: str = __version__
    timestamp: str | None = None

    def extend(self, checks) -> "Report":
        self.checks.extend(checks)
        return self

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failed

    def counts(self) -> dict:
        out = {s: 0 for s in STATUSES}
        for c in self.checks:
            out[c.status] += 1
        return out

    def stamp(self, deterministic: bool) -> "Report":
        self.timestamp = None if deterministic else datetime.now(timezone.utc).isoformat()
        return self

    def to_dict(self) -> dict:
        d = {"version": self.version, "config": self.config,
             "checks": [asdict(c) for c in self.checks]}
        if self.timestamp is not None:
            d["timestamp"] = self.timestamp
        return d


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if hasattr(x, "item"):
        return x.item()
    return str(x)


CSV_FIELDS = ["claim_id", "parameters", "expected", "actual", "status"]


def emit(report: Report, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(_jsonable(report.to_dict()), sort_keys=True, indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for c in report.checks:
            w.writerow([c.claim_id,
                        json.dumps(_jsonable(c.parameters), sort_keys=True),
                        json.dumps(_jsonable(c.expected), sort_keys=True),
                        json.dumps(_jsonable(c.actual), sort_keys=True),
                        c.status])
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def parse(text: str, fmt: str = "json") -> Report:
    """Inverse of :func:`emit` (CSV carries only the checks)."""
    if fmt == "json":
        d = json.loads(text)
        return Report(config=d.get("config", {}),
                      checks=[Check(**c) for c in d.get("checks", [])],
                      version=d.get("version", __version__),
                      timestamp=d.get("timestamp"))
    if fmt == "csv":
        rows = list(csv.DictReader(io.StringIO(text)))
        return Report(checks=[Check(r["claim_id"], json.loads(r["parameters"]),
                                    json.loads(r["expected"]), json.loads(r["actual"]),
                                    r["status"]) for r in rows])
    raise ValueError(f"unknown format {fmt!r}")
