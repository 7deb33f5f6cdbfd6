"""Verification reports: an ordered list of named checks with verdicts."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List

from .ncalg.ideal import Verdict, ZeroCheck

VERIFIED = "verified"
INCONCLUSIVE = "inconclusive"
FAILED = "failed"
_RANK = {VERIFIED: 0, INCONCLUSIVE: 1, FAILED: 2}


def verdict_of(z: Verdict) -> str:
    # a nonzero normal form at the cap is reported as a failure carrying its witness
    return {Verdict.VERIFIED: VERIFIED, Verdict.INCONCLUSIVE: INCONCLUSIVE,
            Verdict.NONZERO: FAILED}[z]


def worst(verdicts) -> str:
    out = VERIFIED
    for v in verdicts:
        if _RANK[v] > _RANK[out]:
            out = v
    return out


@dataclass
class CheckResult:
    name: str
    verdict: str
    degree_cap: int | None
    witness: str | None = None
    detail: str = ""
    seconds: float = 0.0
    assumptions: List[str] = field(default_factory=list)
    count: int = 0

    @property
    def ok(self) -> bool:
        return self.verdict == VERIFIED

    def to_dict(self, timing: bool = True) -> dict:
        d = {"name": self.name, "verdict": self.verdict, "degree_cap": self.degree_cap,
             "assumptions": list(self.assumptions), "detail": self.detail, "count": self.count}
        if self.witness is not None:
            d["witness"] = self.witness
        if timing:
            d["seconds"] = round(self.seconds, 4)
        return d


def from_zero_checks(name: str, cap: int, labelled) -> CheckResult:
    """Fold ``(label, ZeroCheck)`` pairs into one check; the first bad label supplies the witness."""
    labelled = list(labelled)
    verdicts = [verdict_of(z.verdict) for _, z in labelled]
    v = worst(verdicts)
    res = CheckResult(name, v, cap, count=len(labelled))
    if v != VERIFIED:
        for (label, z), vv in zip(labelled, verdicts):
            if vv == v:
                res.detail = f"{label}: {z.reason}" if z.reason else str(label)
                if z.witness is not None:
                    res.witness = z.witness.format()
                break
    return res


@dataclass
class VerificationReport:
    title: str
    checks: List[CheckResult] = field(default_factory=list)
    header: List[str] = field(default_factory=list)
    assumptions: List[str] = field(default_factory=list)

    def add(self, c: CheckResult) -> CheckResult:
        self.checks.append(c)
        return c

    def extend(self, other: "VerificationReport"):
        self.checks.extend(other.checks)
        for h in other.header:
            if h not in self.header:
                self.header.append(h)
        for a in other.assumptions:
            if a not in self.assumptions:
                self.assumptions.append(a)

    @property
    def verdict(self) -> str:
        return worst(c.verdict for c in self.checks)

    @property
    def ok(self) -> bool:
        return self.verdict == VERIFIED

    def get(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed(self) -> List[CheckResult]:
        return [c for c in self.checks if c.verdict != VERIFIED]

    def to_dict(self, timing: bool = True) -> dict:
        return {"title": self.title, "header": list(self.header),
                "assumptions": list(self.assumptions),
                "checks": [c.to_dict(timing) for c in self.checks],
                "verdict": self.verdict}

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=False)

    def to_text(self, timing: bool = True) -> str:
        lines = [f"== {self.title} =="]
        lines += [f"# {h}" for h in self.header]
        lines += [f"# assumption: {a}" for a in self.assumptions]
        for c in self.checks:
            t = f" ({c.seconds:.2f}s)" if timing else ""
            cap = f" D={c.degree_cap}" if c.degree_cap is not None else ""
            lines.append(f"[{c.verdict:>12}] {c.name}{cap} n={c.count}{t}")
            if c.detail:
                lines.append(f"    {c.detail}")
            if c.witness:
                lines.append(f"    witness: {c.witness}")
            for a in c.assumptions:
                lines.append(f"    assumes: {a}")
        lines.append(f"overall: {self.verdict}")
        return "\n".join(lines)


def zero_result(name: str, z: ZeroCheck, label: str = "") -> CheckResult:
    return from_zero_checks(name, z.cap, [(label or name, z)])
