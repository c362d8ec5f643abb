import numpy as np
import pytest
from hypothesis import strategies as st

from pfmedoids.generators import random_front
from pfmedoids.pareto import ParetoInstance

AFFINE5 = [(0, 4), (1, 3), (2, 2), (3, 1), (4, 0)]
AFFINE4 = [(0, 3), (1, 2), (2, 1), (3, 0)]


def affine(n):
    return ParetoInstance(np.array([(i, n - 1 - i) for i in range(n)], dtype=float))


@pytest.fixture
def affine5():
    return ParetoInstance(np.array(AFFINE5, dtype=float))


@pytest.fixture
def affine4():
    return ParetoInstance(np.array(AFFINE4, dtype=float))


def rel_close(a, b, tol=1e-9):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


@st.composite
def fronts(draw, min_n=1, max_n=30):
    """Integer staircases; at alpha = 2 every cost on them is exact in floating point."""
    n = draw(st.integers(min_n, max_n))
    dx = draw(st.lists(st.integers(1, 50), min_size=n, max_size=n))
    dy = draw(st.lists(st.integers(1, 50), min_size=n, max_size=n))
    x = np.cumsum(dx).astype(float)
    y = -np.cumsum(dy).astype(float)
    return ParetoInstance(np.column_stack([x, y]))


def seeded_fronts(count, n_range, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield random_front(int(rng.integers(n_range[0], n_range[1] + 1)), rng)


def is_some_medoid(inst, i, i2, medoid, cost, alpha):
    """True when ``medoid`` attains ``cost`` and ``cost`` is the minimum, both up to rounding."""
    from pfmedoids.costs import center_cost, cluster_cost_naive

    best = cluster_cost_naive(inst, i, i2, alpha).cost
    return rel_close(cost, best, 1e-12) and rel_close(center_cost(inst, i, i2, medoid, alpha), best, 1e-12)


# ------------------------------------------------ acceptance summary lines

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "PASS" if report.outcome == "passed" else "FAIL"
        _ACCEPTANCE[props["criterion"]] = (status, props.get("detail", ""))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        status, detail = _ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {status}  {detail}")
