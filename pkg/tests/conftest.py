import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from dagbag import Dag


@st.composite
def small_dags(draw, min_p=2, max_p=8):
    """Random Dag values for property tests."""
    p = draw(st.integers(min_p, max_p))
    perm = draw(st.permutations(range(p)))
    pairs = [(a, b) for a in range(p) for b in range(a + 1, p)]
    chosen = draw(
        st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))
        if pairs
        else st.just([])
    )
    return Dag.from_edges(p, [(perm[a], perm[b]) for a, b in chosen])


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
