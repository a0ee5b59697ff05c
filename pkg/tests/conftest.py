import pytest

from latcover import cli
from latcover import counterexample as cx


@pytest.fixture(scope="session")
def report_tenth():
    return cx.verify_counterexample("1/10")


@pytest.fixture(scope="session")
def lift_tenth(report_tenth):
    return cx.cylinder_lift(report_tenth, 4)


@pytest.fixture(scope="session")
def fixture_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("fixtures")
    for name, text in cli.fixture_files().items():
        (root / name).write_text(text)
    return root


_ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(n, ok, detail)``."""

    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        _ACCEPTANCE[number] = line
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[number])
