import time

import pytest

from orematch import _kernels

ACCEPTANCE_LOG: list[tuple[str, bool, str, float]] = []


@pytest.fixture(scope="session")
def warm_kernels():
    """JIT-compile every kernel before any timed acceptance run."""
    _kernels.warm_up()
    # scipy's LP solver import is lazy; pull it in outside the timed regions
    from scipy.optimize import linprog  # noqa: F401
    return True


@pytest.fixture(scope="session")
def criterion_log():
    return ACCEPTANCE_LOG


def record_criterion(log, name: str, passed: bool, detail: str, seconds: float):
    log.append((name, passed, detail, seconds))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, passed, detail, seconds in ACCEPTANCE_LOG:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(
            f"[{status}] {name} ({seconds:.1f}s) {detail}"
        )


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0
        return False
