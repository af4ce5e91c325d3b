"""Check records, suite reports and the two output formats."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .. import __version__
from ..ring import CPoly, MPoly, RatFunc, to_structured


@dataclass
class CheckRecord:
    id: str
    anchor: str
    status: str  # "pass", "fail" or "skip"
    witness: dict = field(default_factory=dict)


@dataclass
class SuiteReport:
    suite: str
    criterion: int
    seed: int
    config: dict
    checks: list = field(default_factory=list)
    wall_clock: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "skip": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def to_obj(self, timing: bool = False) -> dict:
        obj = {
            "version": __version__,
            "suite": self.suite,
            "criterion": self.criterion,
            "seed": self.seed,
            "config": plain(self.config),
            "status": "pass" if self.passed else "fail",
            "counts": self.counts(),
            "checks": [
                {"id": c.id, "anchor": c.anchor, "status": c.status, "witness": plain(c.witness)}
                for c in self.checks
            ],
        }
        if timing:
            obj["wall_clock"] = round(self.wall_clock, 3)
        return obj


def plain(x):
    """JSON-ready copy: rationals as strings, polynomials structured."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return round(x, 6)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, MPoly):
        return to_structured(x)
    if isinstance(x, (CPoly, RatFunc)):
        return str(x)
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    return str(x)


def _text_value(x) -> str:
    if isinstance(x, MPoly):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return "{" + ", ".join(f"{k}: {_text_value(v)}" for k, v in x.items()) + "}"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_text_value(v) for v in x) + "]"
    return str(x)


def report_text(rep: SuiteReport, timing: bool = False) -> str:
    lines = [f"suite {rep.suite} (criterion {rep.criterion}) version {__version__} seed {rep.seed}"]
    if rep.config:
        lines.append("config " + _text_value(rep.config))
    for c in rep.checks:
        wit = " ".join(f"{k}={_text_value(v)}" for k, v in c.witness.items())
        lines.append(f"{c.status.upper():4} {c.id}" + (f"  {wit}" if wit else ""))
    n = rep.counts()
    summary = f"result {'PASS' if rep.passed else 'FAIL'} ({n['pass']} pass, {n['fail']} fail, {n['skip']} skip)"
    if timing:
        summary += f" in {rep.wall_clock:.2f}s"
    lines.append(summary)
    return "\n".join(lines) + "\n"


def render(value, fmt: str = "text", timing: bool = False) -> bytes:
    """Bytes for a polynomial, a suite report or a plain mapping."""
    if fmt not in ("text", "structured"):
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(value, SuiteReport):
        if fmt == "text":
            return report_text(value, timing).encode()
        return (json.dumps(value.to_obj(timing), sort_keys=True, indent=2) + "\n").encode()
    if fmt == "structured":
        return (json.dumps(plain(value), sort_keys=True, indent=2) + "\n").encode()
    if isinstance(value, dict):
        out = []
        for k, v in value.items():
            if isinstance(v, (list, tuple)) and v and all(isinstance(p, MPoly) for p in v):
                out.append(f"{k}:")
                out.extend(f"  {p}" for p in v)
            else:
                out.append(f"{k}: {_text_value(v)}")
        return ("\n".join(out) + "\n").encode()
    return (_text_value(value) + "\n").encode()
