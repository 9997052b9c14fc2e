import pytest

from artifact.algebra import GlobalParams
from artifact.classfield import build_rho
from artifact.hecke import build_annihilator

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def p5():
    return GlobalParams(5)


@pytest.fixture(scope="session")
def rho5(p5):
    return build_rho(p5)


@pytest.fixture(scope="session")
def op5(p5, rho5):
    return build_annihilator(p5, rho5.modulus, rho5)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
