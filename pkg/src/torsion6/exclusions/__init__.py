"""Exclusion checks, one per case of the classification, and the report."""

from .diophantine import check_c2c30_aux, check_c3c15_c3c21, check_c3c18_main, check_c6c12
from .divpoly_checks import check_c2c30, check_c42, check_c45, check_c63, check_divpoly_exclusion
from .group_checks import (
    check_c7xc7,
    check_c9xc9,
    check_c25,
    check_c27,
    check_c36_closures,
    check_isogeny_products,
)
from .report import CHECKS, CheckConfig, Report, check_ids, render_markdown, resolve, run_all, run_check
from .tables import check_cm_table, cited_fact_entries
from .verdict import CITED_FACT, EXCLUDED, FAILED, INCONCLUSIVE, STATUSES, ExclusionVerdict
from .verify import VerificationError, verify_check, verify_report

__all__ = [
    "CHECKS",
    "CITED_FACT",
    "CheckConfig",
    "EXCLUDED",
    "ExclusionVerdict",
    "FAILED",
    "INCONCLUSIVE",
    "Report",
    "STATUSES",
    "VerificationError",
    "check_c25",
    "check_c27",
    "check_c2c30",
    "check_c2c30_aux",
    "check_c36_closures",
    "check_c3c15_c3c21",
    "check_c3c18_main",
    "check_c42",
    "check_c45",
    "check_c63",
    "check_c6c12",
    "check_c7xc7",
    "check_c9xc9",
    "check_cm_table",
    "check_divpoly_exclusion",
    "check_ids",
    "check_isogeny_products",
    "cited_fact_entries",
    "render_markdown",
    "resolve",
    "run_all",
    "run_check",
    "verify_check",
    "verify_report",
]
