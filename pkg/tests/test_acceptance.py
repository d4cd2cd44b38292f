"""End-to-end acceptance checks with one printed pass/fail line each."""

import pytest

from maxkinetic.acceptance import ALL_CHECKS


@pytest.mark.parametrize("check", ALL_CHECKS, ids=lambda c: c.__name__)
def test_acceptance(check, capsys):
    result = check()
    with capsys.disabled():
        status = "PASS" if result.ok else "FAIL"
        print(f"{status} {result.name}: {result.detail}")
    assert result.ok, f"{result.name}: {result.detail}"
