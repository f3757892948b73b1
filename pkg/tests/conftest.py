import pytest

# (number, title, passed, detail) filled in by test_acceptance.py
ACCEPTANCE = []


@pytest.fixture
def acceptance_record():
    def record(number, title, passed, detail):
        line = f"{'PASS' if passed else 'FAIL'} criterion {number}: {title} ({detail})"
        print(line)
        ACCEPTANCE.append((number, line))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE):
        terminalreporter.write_line(line)
