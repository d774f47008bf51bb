"""Acceptance run: every verification criterion, one line per result.

The whole battery runs once per session; each test then pulls its record,
prints the formatted pass/fail line, and asserts on the recorded status.
Run with -s (or look at the captured stdout of a failure) to see the lines.
"""

import pytest

from lnz import verify_all

CRITERIA = (
    "catalog-consistency",
    "gradation-dims",
    "char-sequence",
    "nilindex",
    "right-annihilator",
    "formula-oracle",
    "nullity-invariance",
    "non-lie",
    "equivalence-spots",
    "small-oracles",
)


@pytest.fixture(scope="session")
def report():
    return verify_all(dims=(9, 10), seed=0)


def line_for(record) -> str:
    return (f"[{record.status.upper():7}] {record.name}: "
            f"{record.subject} - {record.detail}")


@pytest.mark.parametrize("name", CRITERIA)
def test_criterion(report, name):
    record = report.record(name)
    print(line_for(record))
    assert record.status == "pass", record.detail


def test_every_criterion_is_present(report):
    names = {r.name for r in report.records}
    assert set(CRITERIA) <= names


def test_flagged_notes_are_present(report):
    flagged = {r.name for r in report.records if r.status == "flagged"}
    assert {"reading-beta-e6", "parity-asymmetry",
            "alternating-identity-sign", "nilindex-observed",
            "label-0,6-overlap"} <= flagged
    for record in report.records:
        if record.status == "flagged":
            print(line_for(record))


def test_overall_report_state(report):
    assert report.ok
    counts = report.counts
    assert counts["fail"] == 0
    assert counts["pass"] >= len(CRITERIA)
