import random

import pytest
from hypothesis import strategies as st

from thicklat import gallery
from thicklat.core import FiniteLattice


@pytest.fixture(scope="session")
def corpus():
    return gallery.corpus(seed=20240607, count=200)


@st.composite
def small_lattices(draw, max_points: int = 5):
    """Random lattices from Dedekind-MacNeille completions or down-set lattices of random posets."""
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    if draw(st.booleans()):
        return gallery.random_lattice(rng)
    return gallery.random_downset_lattice(rng)


def brute_meet(L: FiniteLattice, a: int, b: int) -> int:
    lower = [c for c in range(L.n) if L.leq[c, a] and L.leq[c, b]]
    best = [c for c in lower if all(L.leq[d, c] for d in lower)]
    assert len(best) == 1
    return best[0]


def brute_join(L: FiniteLattice, a: int, b: int) -> int:
    upper = [c for c in range(L.n) if L.leq[a, c] and L.leq[b, c]]
    best = [c for c in upper if all(L.leq[c, d] for d in upper)]
    assert len(best) == 1
    return best[0]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
