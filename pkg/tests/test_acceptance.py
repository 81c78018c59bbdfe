"""The ten acceptance criteria, one test each, one printed line each."""

import pytest

from bosonflow import verify


@pytest.mark.parametrize(
    "criterion", verify.ALL_CRITERIA, ids=lambda fn: fn.__name__
)
def test_criterion(criterion, capsys):
    result = criterion()
    with capsys.disabled():
        print(result.line())
    assert result.passed, result.detail


def test_run_all_reports_success(capsys):
    lines = []
    assert verify.run_all(out=lines.append)
    assert len(lines) == 10
    assert all(line.startswith("[PASS]") for line in lines)
