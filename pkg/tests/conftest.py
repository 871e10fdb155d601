"""Shared fixtures: the loop M*(2), its automorphism group and run contexts."""

import pytest

from app.loops.named import NamedElements
from app.loops.table import enumerate_loop
from app.theorems.context import SuiteContext


@pytest.fixture(scope="session", autouse=True)
def test_mode():
    """Cap sampled budgets for the whole session."""
    with pytest.MonkeyPatch.context() as mp:
        mp.setenv("ZORNLAB_TEST_MODE", "1")
        yield


@pytest.fixture(scope="session")
def loop2():
    return enumerate_loop(2)


@pytest.fixture(scope="session")
def loop3():
    return enumerate_loop(3)


@pytest.fixture(scope="session")
def named():
    return NamedElements.q2()


@pytest.fixture(scope="session")
def idx(loop2, named):
    """Table index of every named element of M*(2)."""
    return named.indices(loop2)


@pytest.fixture(scope="session")
def ctx2():
    return SuiteContext(2, samples=2000, options={"exhaustive_orders": [2]})


@pytest.fixture(scope="session")
def ctx3():
    """Context over GF(3) with every check sampled."""
    return SuiteContext(3, samples=500, options={"exhaustive_orders": [2], "additivity_group_sample": 20})


@pytest.fixture(scope="session")
def group2(ctx2):
    return ctx2.group
