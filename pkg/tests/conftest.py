import math

import pytest
from hypothesis import HealthCheck, settings

from kplateau import Params

settings.register_profile(
    "kp", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("kp")


def make_params(alpha=1.0, beta=1.0, sigma=1.0, area=10.0, radius=5.0):
    return Params(alpha, beta, sigma, area, radius)


@pytest.fixture
def oval_point_a():
    return make_params(sigma=0.9, area=2 * math.pi / 5, radius=1.0)


def bisect(f, lo, hi, iters=200):
    flo = f(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        fm = f(mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


ACCEPTANCE_LINES = []


def record_criterion(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] AC{number:>2} {title}" + (f" :: {detail}" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
