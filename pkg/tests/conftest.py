import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from steinerlike.steiner import construct_sts, fano, klein, loop_from_sts  # noqa: E402
from steinerlike.tables import make_group, named_group  # noqa: E402

settings.register_profile("repo", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@pytest.fixture(scope="session")
def klein_loop():
    return klein()


@pytest.fixture(scope="session")
def fano_loop():
    return fano()


@pytest.fixture(scope="session")
def sts9_loop():
    return loop_from_sts(construct_sts(9))


@pytest.fixture(scope="session")
def s2_loop():
    return make_group("cyclic", n=2)


@pytest.fixture(scope="session")
def s3():
    return named_group("S3")


@pytest.fixture(scope="session")
def s4():
    return named_group("S4")


@pytest.fixture(scope="session")
def z4():
    return named_group("Z4")


@pytest.fixture(scope="session")
def z8():
    return named_group("Z8")


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES
    if LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(LINES):
            terminalreporter.write_line(LINES[k])
