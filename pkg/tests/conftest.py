import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bruhat_ds.bruhat import all_intervals  # noqa: E402
from bruhat_ds.perm import Permutation  # noqa: E402
from bruhat_ds.verify import select_intervals  # noqa: E402


def P(*w):
    return Permutation(w)


@pytest.fixture(scope="session")
def s4_intervals():
    return list(all_intervals(4))


@pytest.fixture(scope="session")
def s5_sample():
    from bruhat_ds.bruhat import interval
    return [interval(Permutation(u), Permutation(v)) for u, v in select_intervals(5, 500)]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
