"""Run claim groups and serialise the outcome."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .claims import CLAIM_GROUPS, FAIL, PASS, SKIPPED, ClaimResult, Session


@dataclass
class VerificationReport:
    records: list[ClaimResult]

    def by_id(self) -> dict[str, ClaimResult]:
        return {r.id: r for r in self.records}

    @property
    def failed(self) -> list[ClaimResult]:
        return [r for r in self.records if r.status == FAIL]

    @property
    def exhausted(self) -> list[ClaimResult]:
        return [r for r in self.records if r.status == SKIPPED and r.data.get("reason") == "budget_exhausted"]

    @property
    def ok(self) -> bool:
        return not self.failed

    def exit_code(self) -> int:
        if self.failed:
            return 1
        return 3 if self.exhausted else 0

    def to_json(self, timing: bool = True) -> str:
        return json.dumps([r.to_json(timing) for r in self.records], indent=1, sort_keys=True, ensure_ascii=False) + "\n"

    def summary_lines(self) -> list[str]:
        return [f"{r.status.upper():7} {r.id}" for r in self.records]


def run_claims(groups=None, session: Session | None = None, workers: int = 1) -> VerificationReport:
    """Run the named claim groups (all by default) in their fixed order.

    With ``workers > 1`` the groups run on a thread pool; the record order
    does not depend on completion order.
    """
    names = list(CLAIM_GROUPS) if not groups else list(groups)
    unknown = [g for g in names if g not in CLAIM_GROUPS]
    if unknown:
        raise KeyError(f"unknown claim group(s): {', '.join(unknown)}")
    names = [g for g in CLAIM_GROUPS if g in names]
    S = session or Session()
    if workers > 1:
        # build the shared bases first so threads only read the memo
        for name in ("I2(M5)", "I3(M4)", "I3(M3)", "I2(N)"):
            S.gb(name)
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda g: CLAIM_GROUPS[g](S), names))
    else:
        parts = [CLAIM_GROUPS[g](S) for g in names]
    return VerificationReport([r for part in parts for r in part])


__all__ = ["VerificationReport", "run_claims", "PASS", "FAIL", "SKIPPED"]
