"""Checks of the two-block Hankel example: fixtures, claims and reports."""

from .claims import CLAIM_GROUPS, ClaimResult, Session
from .fixtures import Fixtures
from .report import VerificationReport, run_claims

__all__ = ["CLAIM_GROUPS", "ClaimResult", "Session", "Fixtures", "VerificationReport", "run_claims"]
