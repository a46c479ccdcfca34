"""Seeded self-test criteria."""

import pytest

from src.core.selftest import CRITERIA, run_criterion, selftest_report
from src.models import Verdict


@pytest.mark.parametrize("index", range(len(CRITERIA)))
def test_criterion_passes(index):
    verdict = run_criterion(index, 7)
    assert verdict.passed, verdict.detail
    assert verdict.name == CRITERIA[index].name


def test_criteria_are_reproducible():
    assert run_criterion(0, 11) == run_criterion(0, 11)


def test_report_lists_every_verdict():
    verdicts = [Verdict(name="a", passed=True), Verdict(name="b", passed=False)]
    report = selftest_report(3, verdicts)
    assert report.tables[0].title == "selftest (seed 3)"
    assert report.tables[0].rows == [["1", "a", "PASS"], ["2", "b", "FAIL"]]
    assert report.verdicts == verdicts
