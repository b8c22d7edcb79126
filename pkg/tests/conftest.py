from pathlib import Path

import networkx as nx
import pytest

from mirw import datasets
from mirw.graph import Graph


def graph_from_nx(nx_graph):
    """Graph over the integer nodes 0..N-1 of a networkx graph"""
    return Graph.from_edges(
        list(nx_graph.edges()), node_count=nx_graph.number_of_nodes()
    )


def pytest_collection_modifyitems(session, config, items):
    # For any test that is not marked by a registered mark, add the unit mark
    # so that the test is run by default
    for item in items:
        if (
            len(
                set(mark.name for mark in item.iter_markers()).intersection(
                    ("format", "unit", "acceptance")
                )
            )
            == 0
        ):
            item.add_marker("unit")


##################
# Graph Fixtures #
##################


@pytest.fixture(scope="session")
def kite():
    """Triangle 0-1-2 with pendant node 3 attached to 2"""
    return Graph.from_edges([(0, 1), (0, 2), (1, 2), (2, 3)])


@pytest.fixture(scope="session")
def triangle():
    return Graph.from_edges([(0, 1), (0, 2), (1, 2)])


@pytest.fixture(scope="session")
def path3():
    return Graph.from_edges([(0, 1), (1, 2)])


@pytest.fixture(scope="session")
def single_edge():
    return Graph.from_edges([(0, 1)])


@pytest.fixture(scope="session")
def karate_path():
    return datasets.BUNDLED_DATA_DIR / "karate.edges"


@pytest.fixture(scope="session")
def karate():
    _, graph = datasets.load_dataset("karate")
    return graph


@pytest.fixture(scope="session")
def small_connected_graphs():
    """Every connected graph with 2 to 6 nodes up to isomorphism"""
    return [
        graph_from_nx(nx_graph)
        for nx_graph in nx.graph_atlas_g()
        if nx_graph.number_of_nodes() >= 2 and nx.is_connected(nx_graph)
    ]


@pytest.fixture(scope="session")
def random_graphs():
    """Seeded sparse random graphs, some with isolated nodes"""
    return [
        graph_from_nx(nx.gnp_random_graph(12 + seed % 7, 0.25, seed=seed))
        for seed in range(100)
    ]


@pytest.fixture(scope="session")
def data_dir():
    return Path(__file__).absolute().parent / "data"
