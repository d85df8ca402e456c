import time

import pytest
from hypothesis import HealthCheck, settings

from cyops import corpus

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, limit): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_call(item):
    start = time.perf_counter()
    yield
    item._elapsed = time.perf_counter() - start


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call":
        return
    number, title, limit = marker.args
    entry = _CRITERIA.setdefault(number, {"title": title, "limit": limit, "ok": True, "elapsed": 0.0})
    entry["ok"] = entry["ok"] and rep.passed
    entry["elapsed"] += getattr(item, "_elapsed", 0.0)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        e = _CRITERIA[number]
        status = "PASS" if e["ok"] else "FAIL"
        terminalreporter.write_line(
            f"criterion {number}: {status}  {e['title']}  ({e['elapsed']:.1f} s, limit {e['limit']} s)")


@pytest.fixture(scope="session")
def ops():
    return {name: corpus.load(name) for name in corpus.names()}


@pytest.fixture(scope="session")
def quintic(ops):
    return ops["quintic"]
