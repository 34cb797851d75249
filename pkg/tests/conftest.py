import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# criterion label -> {"passed": bool, "detail": str}
ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion label")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def criterion(request):
    """Callable that attaches a measured-value note to the criterion's summary line."""
    name = request.node.get_closest_marker("criterion").args[0]
    entry = ACCEPTANCE.setdefault(name, {"passed": False, "detail": ""})

    def note(detail):
        entry["detail"] = detail

    return note


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and report.when == "call":
        ACCEPTANCE.setdefault(marker.args[0], {"detail": ""})["passed"] = report.passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, entry in ACCEPTANCE.items():
        line = f"{'PASS' if entry.get('passed') else 'FAIL'}  {name}"
        if entry["detail"]:
            line += f"  [{entry['detail']}]"
        terminalreporter.write_line(line)
