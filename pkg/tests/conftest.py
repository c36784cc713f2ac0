import random
import sys
from pathlib import Path

import pytest

from pebblelab.graphs import build_family, random_connected_graph

sys.path.insert(0, str(Path(__file__).parent))


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20261017, help="seed for randomized suites")


@pytest.fixture(scope="session")
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return random.Random(seed)


@pytest.fixture(scope="session")
def k335():
    return build_family(["product", "complete", "3", "complete", "3", "complete", "5"])


@pytest.fixture(scope="session")
def random_suite(seed):
    """Seeded random connected graphs with 4 to 8 vertices."""
    r = random.Random(seed)
    graphs = []
    for _ in range(200):
        n = r.randint(4, 8)
        graphs.append(random_connected_graph(r, n, r.choice([0.1, 0.2, 0.35, 0.5])))
    return graphs


ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def acceptance_log(request):
    """Collects one verdict line per acceptance criterion for the terminal summary."""
    return request.config.stash.setdefault(ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
