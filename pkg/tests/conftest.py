import time
from contextlib import contextmanager

import pytest

RESULTS = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[RESULTS] = {}


@pytest.fixture
def criterion(request):
    """Times a block, records PASS or FAIL for the summary, enforces the budget."""
    results = request.config.stash[RESULTS]

    @contextmanager
    def run(number, title, budget=None):
        start = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            within = budget is None or elapsed < budget
            limit = f" (budget {budget:g} s)" if budget is not None else ""
            status = "PASS" if ok and within else "FAIL"
            results[number] = f"[{status}] criterion {number:>2}: {title}, {elapsed:.2f} s{limit}"
        assert within, f"criterion {number} took {elapsed:.2f} s, budget {budget} s"

    return run


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(RESULTS, {})
    if not results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
