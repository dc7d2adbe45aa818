import functools

import pytest

from tensorsq.named import make_named_group
from tensorsq.tensor import TensorSquare

ACCEPTANCE_LINES: dict[int, str] = {}
COMPUTED: dict[str, TensorSquare] = {}


@functools.lru_cache(maxsize=None)
def group(spec):
    return make_named_group(spec)


@functools.lru_cache(maxsize=None)
def tensor(spec, cap=24, max_cells=2_000_000):
    TS = TensorSquare(group(spec), cap=cap, max_cells=max_cells)
    COMPUTED.setdefault(spec, TS)
    return TS


@pytest.fixture(scope="session")
def tensor_of():
    return tensor


@pytest.fixture(scope="session")
def group_of():
    return group


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
