import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=100, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion, then assert."""

    def report(number: int, failures: list, title: str) -> None:
        status = "PASS" if not failures else "FAIL"
        detail = "" if not failures else f" ({len(failures)} failing: {'; '.join(map(str, failures[:4]))})"
        line = f"criterion {number:>2} {status}: {title}{detail}"
        _ACCEPTANCE[number] = line
        print(line)
        assert not failures, line

    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[n])
