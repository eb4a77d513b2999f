import os

from hypothesis import HealthCheck, settings

# Deterministic by default so test_output.txt is reproducible; set
# DIGITSUMS_HYPOTHESIS=random to explore fresh seeds.
settings.register_profile(
    "default",
    derandomize=os.environ.get("DIGITSUMS_HYPOTHESIS") != "random",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


# (criterion, verdict, detail) triples appended by test_acceptance.py
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, verdict, detail in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"criterion {number:>2}: {verdict}  {detail}")
