import pytest

# pass/fail lines recorded by the acceptance suite, echoed in the summary
ACCEPTANCE_LINES = []

from gencore.matrix import EXACT_H, EXACT_T, Matrix

I = 1j


def mat(rows, ctx=EXACT_H):
    return Matrix(rows, ctx)


@pytest.fixture(params=[EXACT_H, EXACT_T], ids=["conj", "transpose"])
def ctx(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
