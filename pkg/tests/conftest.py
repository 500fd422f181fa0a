from __future__ import annotations

import sys

from hypothesis import HealthCheck, settings

settings.register_profile(
    "fixed",
    derandomize=True,
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("fixed")


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance")
    for line in sorted(module.RESULTS):
        terminalreporter.write_line(line)
