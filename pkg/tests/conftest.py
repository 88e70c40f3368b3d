import re

from hypothesis import HealthCheck, settings

# Fixed-seed randomized testing: every property runs 200 derandomized cases.
settings.register_profile(
    "repo",
    max_examples=200,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("repo")

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter):
    rows = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            m = _CRITERION.search(getattr(rep, "nodeid", ""))
            if m and (rep.when == "call" or outcome == "error"):
                rows[int(m.group(1))] = (m.group(2).replace("_", " "), "PASS" if outcome == "passed" else "FAIL")
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(rows):
        name, verdict = rows[num]
        terminalreporter.write_line(f"criterion {num:2d} [{verdict}] {name}")
