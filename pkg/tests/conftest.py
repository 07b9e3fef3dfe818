import numpy as np
import pytest

from canonical_packets.experiment import ExperimentConfig, run

CRITERIA: list[tuple[str, bool, str]] = []


@pytest.fixture
def record():
    """Record one acceptance-criterion verdict for the terminal summary."""

    def _record(name: str, passed: bool, detail: str = ""):
        CRITERIA.append((name, bool(passed), detail))
        print(f"{'PASS' if passed else 'FAIL'} {name} {detail}")

    return _record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in CRITERIA:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")


_RUNS = {}


def benchmark_run(**overrides):
    """Cached benchmark run, shared by every test module in the session."""
    key = tuple(sorted(overrides.items()))
    if key not in _RUNS:
        _RUNS[key] = run(ExperimentConfig(**overrides))
    return _RUNS[key]


@pytest.fixture(scope="session")
def run_double_well():
    return benchmark_run(a=-1.0)


@pytest.fixture(scope="session")
def run_single_well():
    return benchmark_run(a=1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)
