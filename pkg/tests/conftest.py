import sys
import random

import pytest

from maxkernel.gf import field_new

SEEDS = (1, 2, 3)


@pytest.fixture(params=SEEDS)
def rng(request):
    return random.Random(request.param)


def root_count_dim(f):
    """Kernel dimension by counting roots over every field element."""
    F = f.field
    count = sum(1 for x in F.elements() if f(x) == 0)
    dim = 0
    while F.q ** dim < count:
        dim += 1
    assert F.q ** dim == count
    return dim


@pytest.fixture(scope="session")
def f2_7():
    return field_new(2, 1, 7, 1)


@pytest.fixture(scope="session")
def f2_8():
    return field_new(2, 1, 8, 1)


@pytest.fixture(scope="session")
def f2_15():
    return field_new(2, 1, 15, 1)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.line(num))
