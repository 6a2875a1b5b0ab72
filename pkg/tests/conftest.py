import re
import sys
from pathlib import Path

import pytest

from concede.lexicon import load_lexicon
from concede.scenario import parse_scenario

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon()


@pytest.fixture
def load():
    def _load(name):
        return parse_scenario(str(SCENARIOS / f"{name}.scn"))
    return _load


@pytest.fixture
def windows(load):
    return load("windows_v").situation


NAMES = {
    1: "golden regeneration",
    2: "goal-table tree notation",
    3: "marker-corpus fixture suite",
    4: "ordering invariants",
    5: "lexicon oracle equivalence",
    6: "network totality",
    7: "determinism",
}


_OUTCOMES = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_(\d)_", report.nodeid)
    if m and (report.when == "call" or report.failed):
        _OUTCOMES[int(m.group(1))] = report.passed and _OUTCOMES.get(int(m.group(1)), True)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _OUTCOMES:
        return
    details = getattr(sys.modules.get("test_acceptance"), "RESULTS", {})
    terminalreporter.section("acceptance criteria")
    for n in sorted(NAMES):
        if n not in _OUTCOMES:
            line = "NOT RUN"
        else:
            line = "PASS" if _OUTCOMES[n] else "FAIL"
            if n in details:
                line += "  " + details[n][1]
        terminalreporter.write_line(f"criterion {n} ({NAMES[n]}): {line}")
