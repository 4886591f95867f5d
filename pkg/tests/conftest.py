import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mutclust import from_edges
from oracles import random_digraph


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def make_random_graph(rng, n, p):
    """Random simple digraph; regenerates until at least one edge exists."""
    for _ in range(50):
        edges = random_digraph(rng, n, p)
        if edges:
            return from_edges(edges, n=n)
    raise AssertionError("could not generate a nonempty random graph")


@pytest.fixture
def graph_factory(rng):
    def make(n=20, p=0.15):
        return make_random_graph(rng, n, p)

    return make
