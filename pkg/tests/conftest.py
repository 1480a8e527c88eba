from __future__ import annotations

from fractions import Fraction

import pytest

from wicolor import (
    UndirectedWeightedGraph,
    WeightedDigraph,
    embed_undirected,
    parse_coloring,
    parse_digraph,
    parse_undirected,
)
from wicolor.data import load_text


@pytest.fixture(scope="session")
def golden5() -> WeightedDigraph:
    return parse_digraph(load_text("golden5.wig"))


@pytest.fixture(scope="session")
def golden5_valid() -> dict[int, int]:
    return parse_coloring(load_text("golden5_valid.col"))


@pytest.fixture(scope="session")
def golden5_invalid() -> dict[int, int]:
    return parse_coloring(load_text("golden5_invalid.col"))


@pytest.fixture(scope="session")
def prism() -> UndirectedWeightedGraph:
    return parse_undirected(load_text("prism10.wug"))


@pytest.fixture(scope="session")
def prism_digraph(prism) -> WeightedDigraph:
    return embed_undirected(prism)


@pytest.fixture(scope="session")
def prism_relaxed() -> UndirectedWeightedGraph:
    """The prism with cycle weights lowered from 1 to 9/10."""
    edges = []
    for i in range(1, 6):
        j = i % 5 + 1
        edges.append((i, j, Fraction(9, 10)))
        edges.append((i + 5, j + 5, Fraction(9, 10)))
        edges.append((i, i + 5, Fraction(1, 2)))
    return UndirectedWeightedGraph(10, edges)


@pytest.fixture(scope="session")
def triangle_half() -> WeightedDigraph:
    arcs = [
        (a, b, Fraction(1, 2))
        for a in (1, 2, 3)
        for b in (1, 2, 3)
        if a != b
    ]
    return WeightedDigraph(3, arcs)
