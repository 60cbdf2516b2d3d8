"""Acceptance suite: one test per criterion, each at its stated tolerance.

Every test prints a ``PASS``/``FAIL`` line (visible with ``pytest -v -s``
or in the CLI driver ``ncfold reproduce``).
"""

import json

import pytest

from ncfold.reproduce import ACCEPTANCE_CHECKS


@pytest.mark.parametrize("name,check", ACCEPTANCE_CHECKS, ids=[n for n, _ in ACCEPTANCE_CHECKS])
def test_acceptance(name, check):
    result = check()
    status = "PASS" if result.passed else "FAIL"
    print(f"[{status}] {name}")
    assert result.passed, f"{name} failed: {json.dumps(result.details, sort_keys=True)}"
