import math

import networkx as nx
import numpy as np
import pytest

from mirw import constants, InvalidArgumentError, UndefinedGraphError
from mirw.graph import Graph
from mirw.influence import (
    InfluenceConfig,
    ami,
    ami_from_quantities,
    ami_transition_matrix,
    ami_weight_matrix,
    cn,
    mutual_information,
    node_prior,
    uniform_transition_matrix,
    weighted_transition_matrix,
)

from conftest import graph_from_nx

RAW = InfluenceConfig(cn_mode=constants.CN_MODE_RAW)
RECEIVED = InfluenceConfig(direction=constants.DIRECTION_RECEIVED)


def test_config_validation():
    with pytest.raises(InvalidArgumentError):
        InfluenceConfig(cn_mode="bogus")
    with pytest.raises(InvalidArgumentError):
        InfluenceConfig(direction="sideways")
    with pytest.raises(InvalidArgumentError):
        InfluenceConfig(negative_ami="keep")


def test_prior_and_cn(kite):
    assert node_prior(kite, 2) == 0.75
    assert node_prior(kite, 3) == 0.25
    assert cn(kite, 0, 1) == 3
    assert cn(kite, 2, 3) == 2
    assert cn(kite, 0, 1, RAW) == 1
    assert cn(kite, 2, 3, RAW) == 0
    with pytest.raises(InvalidArgumentError):
        cn(kite, 1, 1)
    with pytest.raises(UndefinedGraphError):
        node_prior(Graph.from_edges([]), 0)


def test_mutual_information(kite, random_graphs):
    assert mutual_information(kite, 0, 1) == pytest.approx(0.75 * math.log(3))
    for graph in random_graphs[:10]:
        for i, j in graph.edges.tolist():
            assert mutual_information(graph, i, j) == pytest.approx(
                mutual_information(graph, j, i)
            )
    # isolated node contributes no information
    graph = Graph.from_edges([(0, 1)], node_count=3)
    assert mutual_information(graph, 0, 2) == 0.0


def test_ami_from_quantities():
    forward = ami_from_quantities(4 / 6, 2 / 6, 3, 6)
    reverse = ami_from_quantities(2 / 6, 4 / 6, 3, 10)
    assert forward == pytest.approx(0.1352, abs=1e-4)
    assert reverse == pytest.approx(-0.0799, abs=1e-4)
    assert forward > reverse
    assert ami_from_quantities(0.5, 0.5, 3, 0) == 0.0
    assert ami_from_quantities(0.5, 0.5, 0, 4) == 0.0


def test_ami_kite(kite):
    assert ami(kite, 0, 1) == pytest.approx(0.0, abs=1e-12)
    assert ami(kite, 0, 2) == pytest.approx(0.1875 * math.log(0.5))
    assert ami(kite, 2, 0) == pytest.approx(0.0, abs=1e-12)
    assert ami(kite, 2, 3) == pytest.approx(0.75 * math.log(4))
    assert ami(kite, 2, 3) > ami(kite, 0, 1) > ami(kite, 0, 2)
    with pytest.raises(InvalidArgumentError):
        ami(kite, 3, 3)


@pytest.mark.parametrize("cfg", [InfluenceConfig(), RAW])
def test_ami_asymmetric_random(random_graphs, cfg):
    checked = 0
    for graph in random_graphs:
        degrees = graph.degrees[graph.degrees > 0]
        if degrees.min() == degrees.max():
            continue
        gaps = [
            abs(ami(graph, i, j, cfg) - ami(graph, j, i, cfg))
            for i, j in graph.edges.tolist()
        ]
        assert max(gaps) > 1e-9
        checked += 1
    assert checked > 0


def test_weight_matrix_matches_pairwise(kite, random_graphs):
    for graph in [kite] + random_graphs[:20]:
        literal = ami_weight_matrix(graph).toarray()
        received = ami_weight_matrix(graph, RECEIVED).toarray()
        raw = ami_weight_matrix(graph, RAW).toarray()
        for i, j in graph.edges.tolist():
            for src, dst in ((i, j), (j, i)):
                assert literal[src, dst] == pytest.approx(
                    ami(graph, src, dst), abs=1e-12
                )
                assert received[src, dst] == pytest.approx(
                    ami(graph, dst, src), abs=1e-12
                )
                assert raw[src, dst] == pytest.approx(
                    ami(graph, src, dst, RAW), abs=1e-12
                )


def test_kite_transition_rows(kite):
    literal = ami_transition_matrix(kite).to_dense()
    # all weights of node 0 are clamped to zero: uniform fallback
    np.testing.assert_allclose(literal[0], [0, 0.5, 0.5, 0])
    np.testing.assert_allclose(literal[2], [0, 0, 0, 1])
    np.testing.assert_allclose(literal[3], [0, 0, 1, 0])
    received = ami_transition_matrix(kite, RECEIVED).to_dense()
    np.testing.assert_allclose(received[2], [1 / 3, 1 / 3, 0, 1 / 3])


def test_uniform_transition_matrix(path3):
    probs = uniform_transition_matrix(path3)
    np.testing.assert_allclose(
        probs.to_dense(), [[0, 1, 0], [0.5, 0, 0.5], [0, 1, 0]]
    )
    np.testing.assert_allclose(probs.row(1), [0.5, 0, 0.5])


def test_isolated_nodes_self_loop():
    graph = Graph.from_edges([(0, 1)], node_count=3)
    for probs in (
        uniform_transition_matrix(graph),
        ami_transition_matrix(graph),
    ):
        np.testing.assert_allclose(probs.row(2), [0, 0, 1])
        assert probs.check(graph)


def test_row_stochastic(random_graphs):
    for graph in random_graphs:
        assert uniform_transition_matrix(graph).check(graph)
        for cfg in (InfluenceConfig(), RAW, RECEIVED):
            assert ami_transition_matrix(graph, cfg).check(graph)


def test_weight_rescaling_invariance(random_graphs):
    for graph in random_graphs[:20]:
        weights = ami_weight_matrix(graph)
        np.testing.assert_allclose(
            weighted_transition_matrix(graph, weights * 3.5).to_dense(),
            weighted_transition_matrix(graph, weights).to_dense(),
        )


@pytest.mark.parametrize(
    "nx_graph", [nx.cycle_graph(6), nx.complete_graph(4), nx.cycle_graph(5)]
)
def test_vertex_transitive_uniform(nx_graph):
    graph = graph_from_nx(nx_graph)
    uniform = uniform_transition_matrix(graph).to_dense()
    for cfg in (InfluenceConfig(), RECEIVED, RAW):
        np.testing.assert_allclose(
            ami_transition_matrix(graph, cfg).to_dense(), uniform, atol=1e-12
        )
