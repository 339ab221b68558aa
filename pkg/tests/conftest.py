import pytest

from shiftcover import builtin, cyclic, dihedral, symmetric


@pytest.fixture(scope="session")
def S3():
    return symmetric(3)


@pytest.fixture(scope="session")
def C3():
    return cyclic(3)


@pytest.fixture(scope="session")
def C5():
    return cyclic(5)


@pytest.fixture(scope="session")
def small_groups():
    return [cyclic(n) for n in range(1, 9)] + [dihedral(3), dihedral(4), symmetric(3)]


@pytest.fixture(scope="session")
def trefoil():
    return builtin("trefoil")


@pytest.fixture(scope="session")
def figure8():
    return builtin("figure8")


_ACCEPTANCE_RESULTS = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        number, title = marker.args
        _ACCEPTANCE_RESULTS.append((number, title, report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome, duration in sorted(_ACCEPTANCE_RESULTS):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}: {verdict}  ({duration:.2f} s)  {title}")
