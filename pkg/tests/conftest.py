import pytest

ACCEPTANCE = {}


@pytest.fixture
def record_criterion():
    def record(number, title, passed, detail=""):
        ACCEPTANCE[number] = (title, passed, detail)
        line = f"CRITERION {number:>2} {'PASS' if passed else 'FAIL'} {title} {detail}".rstrip()
        print(line)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(
            f"CRITERION {number:>2} {'PASS' if passed else 'FAIL'} {title} {detail}".rstrip())
