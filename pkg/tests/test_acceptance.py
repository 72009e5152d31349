"""Acceptance suite: one test per criterion of the shipped self-test.

The criteria are executable product requirements; each must hold with
exact symbolic equality.  The module-axiom sweep additionally carries a
runtime budget.
"""

import time

import pytest

from qvira.selftest import ALL_CRITERIA

CRITERIA = {criterion.__name__: criterion for criterion in ALL_CRITERIA}


@pytest.mark.parametrize("name", list(CRITERIA), ids=list(CRITERIA))
def test_criterion(name):
    result = CRITERIA[name]()
    assert result.passed, f"{result.name}: {result.detail}"


def test_module_axiom_sweep_within_budget():
    start = time.monotonic()
    result = CRITERIA["criterion_01_module_axiom"]()
    elapsed = time.monotonic() - start
    assert result.passed
    assert elapsed < 60.0, f"sweep took {elapsed:.1f}s"
