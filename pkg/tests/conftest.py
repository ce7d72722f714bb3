"""
Shared fixtures for the devolved test suite.
"""

import pytest

from devolved import IntegerSet, create_plan
from devolved.observability import configure_tracing


@pytest.fixture(autouse=True)
def _tracing_off():
    """Every test starts and ends with the global tracer disabled."""
    configure_tracing(enabled=False)
    yield
    configure_tracing(enabled=False)


@pytest.fixture
def multiples_of_three_and_one() -> IntegerSet:
    """3N_0 u {1} truncated at 99."""
    return IntegerSet.from_runs([(0, 99, 3)], 99) | IntegerSet.from_members([1], limit=99)


@pytest.fixture
def plan_h2():
    """h=2 plan through I_3 = [126, 252]."""
    return create_plan(2, blocks=2)
