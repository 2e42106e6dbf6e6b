import math

import numpy as np
import pytest

SQRT2 = math.sqrt(2.0)


def two_clusters():
    """Two equilateral triangles of side 0.1, about 2 apart."""
    tri = (0.1 / SQRT2) * np.eye(4)[:3]
    far = tri + 2.0 * np.eye(4)[3]
    return np.vstack([tri, far])


@pytest.fixture
def clusters():
    return two_clusters()


@pytest.fixture
def rng():
    return np.random.default_rng(20260418)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one acceptance line; the line is printed now and in the run summary."""

    def record(number, title, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {title}  {detail}".rstrip()
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
