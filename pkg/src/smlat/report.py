"""Machine-readable run reports for the CLI and harnesses."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of one command: verdicts, witnesses, timings.

    Verdicts and witnesses are deterministic given fixed seeds; timings are
    informational only and excluded from the stable view.
    """

    command: str
    inputs: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    def add(self, name: str, status: str, detail: str = "") -> None:
        assert status in ("pass", "fail", "info")
        self.verdicts.append({"name": name, "status": status, "detail": detail})

    def add_witness(self, name: str, **data) -> None:
        self.witnesses.append({"name": name, **data})

    @property
    def ok(self) -> bool:
        return all(v["status"] != "fail" for v in self.verdicts)

    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "info": 0}
        for v in self.verdicts:
            out[v["status"]] += 1
        return out

    def stable_dict(self) -> dict:
        return {"command": self.command, "inputs": self.inputs,
                "verdicts": self.verdicts, "witnesses": self.witnesses}

    def to_dict(self) -> dict:
        out = self.stable_dict()
        out["timings"] = self.timings
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str)

    def render_text(self) -> str:
        lines = [f"== {self.command} =="]
        for key, val in self.inputs.items():
            lines.append(f"   {key}: {val}")
        for v in self.verdicts:
            mark = {"pass": "PASS", "fail": "FAIL", "info": "INFO"}[v["status"]]
            detail = f" - {v['detail']}" if v["detail"] else ""
            lines.append(f"[{mark}] {v['name']}{detail}")
        for w in self.witnesses:
            payload = ", ".join(f"{k}={v}" for k, v in w.items() if k != "name")
            lines.append(f"  witness {w['name']}: {payload}")
        c = self.counts()
        lines.append(f"-- {c['pass']} pass, {c['fail']} fail, {c['info']} info")
        return "\n".join(lines)
