import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ehdf.corpus import class_corpus, general_corpus  # noqa: E402
from ehdf.graph import Graph, complete_graph, cycle_graph, path_graph  # noqa: E402


@pytest.fixture(scope="session")
def members():
    return class_corpus(seed=11, size=120)


@pytest.fixture(scope="session")
def mixed():
    return general_corpus(seed=12, size=160)


@pytest.fixture
def K4():
    return complete_graph(4)


@pytest.fixture
def C4():
    return cycle_graph(4)


@pytest.fixture
def C5():
    return cycle_graph(5)


@pytest.fixture
def P4():
    return path_graph(4)


@pytest.fixture
def diamond():
    return Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
