import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# field sizes exercised throughout; 169 keeps the 13-adic quadratic extension in view
SMALL_Q = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49]


@pytest.fixture(params=SMALL_Q, ids=lambda q: f"q{q}")
def small_q(request):
    return request.param


CRITERIA: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record one summary line per acceptance criterion."""
    def record(number: int, ok: bool, detail: str):
        CRITERIA[number] = f"CRITERION {number}: {'PASS' if ok else 'FAIL'} {detail}"
        print(CRITERIA[number])
    return record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for k in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[k])
