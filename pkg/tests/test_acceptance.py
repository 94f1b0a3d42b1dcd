"""Acceptance criteria 1-9; each test prints its [PASS]/[FAIL] line."""
import pytest

from stmodkit.acceptance import CRITERIA, AcceptanceConfig

LINES: dict = {}


@pytest.mark.slow
@pytest.mark.parametrize("number", range(1, len(CRITERIA) + 1))
def test_criterion(number, capsys):
    result = CRITERIA[number - 1](AcceptanceConfig())
    LINES[number] = result.line()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
