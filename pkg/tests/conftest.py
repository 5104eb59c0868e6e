import random

import pytest

from orthoconv import PrimeField, RecurrenceFamily, default_field

_CRITERIA = {}


@pytest.fixture
def field():
    return default_field()


@pytest.fixture
def small_field():
    return PrimeField(257)


@pytest.fixture
def rng(request):
    return random.Random(request.node.name)


@pytest.fixture
def random_family(field, rng):
    def make(length, fld=None):
        return RecurrenceFamily.random(length, fld or field, rng)
    return make


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    num, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.failed):
        _CRITERIA[num] = (title, report.passed, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        title, ok, dur = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}  ({dur:.2f}s)")
