import pytest

from shapes import ACCEPTANCE_RESULTS


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_RESULTS):
        name, ok, note = ACCEPTANCE_RESULTS[num]
        line = f"criterion {num:>2} {'PASS' if ok else 'FAIL'}  {name}"
        terminalreporter.write_line(line + (f"  ({note})" if note else ""))


@pytest.fixture
def rng():
    import random

    return random.Random(20240601)
