"""Shared fixtures: two-vertex reference algebras and brute-force oracles."""

import numpy as np
import pytest

import evoalg as ev
from evoalg.cells import Cell, PairCell

# masses assigned to the cells (1,1), (1,2), (2,1), (2,2) in that order
REFERENCE_P = (0.1, 0.2, 0.3, 0.4)


def cell(states, k=2):
    return Cell.from_states(states, k)


def pair(first_states, second_states, k=2):
    return PairCell(cell(first_states, k), cell(second_states, k))


def display_cells(n, k):
    """All cells ordered by their state tuples (vertex 0 first)."""
    cells = [Cell.from_index(i, n, k) for i in range(k**n)]
    return sorted(cells, key=lambda c: c.states)


def measure_from_state_weights(weights, n, k):
    """Build a measure from a {state-tuple: weight} table."""
    raw = np.zeros(k**n)
    for states, w in weights.items():
        raw[Cell.from_states(states, k).index] = w
    return ev.from_weights(raw, n, k)


def reference_measure_for(p=REFERENCE_P):
    cells = display_cells(2, 2)
    return measure_from_state_weights(
        {c.states: w for c, w in zip(cells, p)}, 2, 2
    )


def brute_children(theta, parts, k):
    """Children by filtering every cell against the componentwise rule."""
    n = theta.n
    out = set()
    for idx in range(k**n):
        candidate = Cell.from_index(idx, n, k)
        ok = True
        for block in parts:
            got = tuple(candidate.digits[v] for v in block)
            first = tuple(theta.first.digits[v] for v in block)
            second = tuple(theta.second.digits[v] for v in block)
            if got != first and got != second:
                ok = False
                break
        if ok:
            out.add(candidate)
    return out


def brute_row(algebra, generator):
    """Coefficient row via direct product-mass sums over brute children."""
    parts = ev.components(algebra.graph)
    mu = algebra.measure
    kids = brute_children(generator, parts, algebra.space.k)
    pairs = [(a, b) for a in kids for b in kids]
    denom = sum(mu.mass(a) * mu.mass(b) for a, b in pairs)
    return {
        PairCell(a, b).index: mu.mass(a) * mu.mass(b) / denom for a, b in pairs
    }


def random_positive_measure(rng, n, k):
    return ev.from_weights(rng.uniform(0.1, 1.0, size=k**n), n, k)


def all_small_instances(max_n=3, ks=(2, 3)):
    """Every graph on up to max_n vertices with every edge subset."""
    import itertools

    for n in range(1, max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(2 ** len(pairs)):
            edges = frozenset(p for i, p in enumerate(pairs) if mask >> i & 1)
            for k in ks:
                yield ev.Graph(n, edges), ev.StateSpace(k)


@pytest.fixture
def two_states():
    return ev.StateSpace(2, ("a", "A"))


@pytest.fixture
def edge_graph():
    return ev.Graph(2, frozenset({(0, 1)}))


@pytest.fixture
def free_graph():
    return ev.Graph(2)


@pytest.fixture
def reference_measure():
    return reference_measure_for()


@pytest.fixture
def edge_algebra(edge_graph, two_states, reference_measure):
    return ev.build_algebra(edge_graph, two_states, reference_measure)


@pytest.fixture
def free_algebra(free_graph, two_states, reference_measure):
    return ev.build_algebra(free_graph, two_states, reference_measure)
