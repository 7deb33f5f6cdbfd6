import os

import pytest
from hypothesis import HealthCheck, settings

from acceptance_log import RESULTS

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=300,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HGW_HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def red3():
    from hgw.ncalg.ideal import Reducer
    return Reducer(3)


@pytest.fixture(scope="session")
def red2():
    from hgw.ncalg.ideal import Reducer
    return Reducer(2)


@pytest.fixture(scope="session")
def p12():
    from hgw.findim.rmatrix import ASTMatrix
    return ASTMatrix.from_upper(2, 2, {(1, 2): 1})


@pytest.fixture(scope="session")
def I2():
    from hgw.catalog import FieldMatrix
    return FieldMatrix.identity(2)


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for k in sorted(RESULTS):
        ok, desc = RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {desc}")
