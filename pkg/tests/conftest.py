from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

CRITERIA = {
    1: "tightness of the (n-2)/4 construction",
    2: "oracle finds cycles on complete and balanced graphs",
    3: "absorber counting bound",
    4: "dense-core path length",
    5: "oracle agrees with the naive oracle at n = 6",
    6: "extremal pipeline end to end",
    7: "non-extremal pipeline end to end",
    8: "absorbing structure contract",
    9: "classification balance identity",
    10: "determinism of solve reports",
}

_outcomes: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number k")


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        for key, value in report.user_properties:
            if key == "criterion":
                _outcomes.setdefault(value, []).append(report.outcome == "passed")


def pytest_runtest_setup(item):
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        item.user_properties.append(("criterion", mark.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        if k not in _outcomes:
            continue
        status = "PASS" if all(_outcomes[k]) else "FAIL"
        terminalreporter.write_line(f"criterion {k:2d}: {status}  {CRITERIA[k]}")
