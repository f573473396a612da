import pytest
from hypothesis import settings

from qlaguerre import PrecisionContext, WeightParams, build_recurrence, compute_auxiliaries

settings.register_profile("default", max_examples=25, deadline=None)
settings.load_profile("default")

# the standard deformed point used throughout
STD = ("0.6", "0.5", "0.3")


@pytest.fixture(scope="session")
def std_params():
    return WeightParams(*STD)


@pytest.fixture(scope="session")
def ctx60():
    return PrecisionContext(60)


@pytest.fixture(scope="session")
def std_tab(std_params, ctx60):
    return build_recurrence(std_params, 7, ctx60)


@pytest.fixture(scope="session")
def std_aux(std_tab, std_params):
    return compute_auxiliaries(std_tab, std_params, std_tab.spec, 6)


@pytest.fixture(scope="session")
def laguerre_params():
    return WeightParams("0.5", "0", "0")


@pytest.fixture(scope="session")
def laguerre_tab(laguerre_params):
    return build_recurrence(laguerre_params, 4, PrecisionContext(40))



@pytest.fixture
def report_criterion(request):
    """Call as ``report_criterion(label, ok, detail)``; collected for the terminal summary."""
    lines = request.config.stash.setdefault(_LINES, [])

    def record(label, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f": {detail}" if detail else "")
        lines.append(line)
        print(line)
        return ok

    return record


_LINES = pytest.StashKey[list]()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
