import pytest

from fdseries.dfield import base_tower

CRITERIA = {}


def record(number, ok, detail=""):
    CRITERIA[number] = (ok, detail)
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
    print(line)
    return line


@pytest.fixture
def t():
    return base_tower()


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip())
