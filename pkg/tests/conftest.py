import pytest
from hypothesis import HealthCheck, settings

from biquad.characters import TowerConfig
from biquad.config import load_tower
from biquad.curve import Curve, Place

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def f5():
    """The example tower: y^2 = x(x-1)(x-4) over F_5, Sigma_inf = {(3,2)}."""
    return load_tower(None)


@pytest.fixture(scope="session")
def curve5(f5):
    return f5.curve


@pytest.fixture(scope="session")
def f3():
    c = Curve(3, (0, 1, 2))
    x = Place.parse("1:0:0")
    return TowerConfig(c, (), (x,), ((x, 0),))


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance(request):
    """Record a one-line verdict; all lines are echoed in the terminal summary."""
    def record(n: int, ok: bool, detail: str, seconds: float):
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({seconds:.2f}s) {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
