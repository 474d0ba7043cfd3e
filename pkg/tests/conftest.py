import random
import sys

import pytest

from nhgp.generators import random_hypergraph


@pytest.fixture
def rng():
    return random.Random(1234)


def small_instances(count, seed=0, n=(6, 40), m=(4, 60), **kw):
    r = random.Random(seed)
    for i in range(count):
        yield random_hypergraph(r.randint(*n), r.randint(*m), seed=seed * 1000 + i, **kw)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
