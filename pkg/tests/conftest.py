import pytest

from centerkit.arrangement import LineArrangement
from centerkit.corpus import four_lines, standard_triangle


@pytest.fixture
def tri111():
    return standard_triangle((1, 1, 1))


@pytest.fixture
def tri123():
    return standard_triangle((1, 2, 3))


@pytest.fixture
def quad1111():
    return four_lines((1, 1, 1, 1))


def arrangement(lines, mults):
    return LineArrangement.from_coefficients(lines, mults)


ACCEPTANCE = {}


def record(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
