import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from homolink.graphs import Graph

# The four-node worked example used throughout: nodes 0..3 carry filter
# values 1..4, edges (0,2),(1,2),(0,3),(1,3),(2,3) form two independent loops.
TWO_LOOP_EDGES = [(0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]
TWO_LOOP_FILTER = np.array([1.0, 2.0, 3.0, 4.0])


@pytest.fixture
def two_loop_graph():
    return Graph(4, list(TWO_LOOP_EDGES))


@pytest.fixture
def two_loop_filter():
    return TWO_LOOP_FILTER.copy()
