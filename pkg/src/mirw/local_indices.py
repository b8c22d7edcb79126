"""Neighborhood based similarity indices (Jaccard, resource allocation,
Adamic-Adar, clustering coefficient weighted common neighbors) and the
quasi-local Local Path index.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from mirw import constants, log, InvalidArgumentError
from mirw.graph import clustering_coefficients, common_neighbors
from mirw.walkers import ScoreTable

LOGGER = log.get_logger()


@dataclass(frozen=True)
class LpConfig:
    alpha: float = constants.DEFAULT_LP_ALPHA

    def __post_init__(self):
        if not self.alpha >= 0:
            raise InvalidArgumentError(
                f"Local path alpha must be >= 0 (got {self.alpha})"
            )


def _shared(g, i, j):
    i, j = g.check_node(i), g.check_node(j)
    if i == j:
        raise InvalidArgumentError(
            f"Similarity indices require distinct nodes (got {i} twice)"
        )
    return common_neighbors(g, i, j)


####################
# Pairwise indices #
####################


def jaccard(g, i, j):
    shared = _shared(g, i, j)
    union = g.degree(i) + g.degree(j) - len(shared)
    return len(shared) / union if union > 0 else 0.0


def resource_allocation(g, i, j):
    return float(sum(1.0 / g.degree(z) for z in _shared(g, i, j)))


def adamic_adar(g, i, j):
    # shared neighbors have degree >= 2 so the log is positive
    return float(sum(1.0 / math.log(g.degree(z)) for z in _shared(g, i, j)))


def cclp(g, i, j):
    shared = _shared(g, i, j)
    if not shared:
        return 0.0
    clust = clustering_coefficients(g)
    return float(sum(clust[z] for z in shared))


##################
# Score matrices #
##################


def _weighted_paths(g, node_weights):
    """A diag(w) A: sum of w_z over shared neighbors z of each pair"""
    adj = g.adjacency_matrix
    return adj @ sparse.diags(node_weights) @ adj


def jaccard_table(g):
    adj = g.adjacency_matrix
    shared = (adj @ adj).toarray()
    union = g.degrees[:, None] + g.degrees[None, :] - shared
    scores = np.divide(
        shared, union, out=np.zeros_like(shared), where=union > 0
    )
    return ScoreTable.from_matrix(constants.JC, scores)


def resource_allocation_table(g):
    degs = g.degrees.astype(float)
    inv = np.divide(1.0, degs, out=np.zeros_like(degs), where=degs > 0)
    return ScoreTable.from_matrix(constants.RA, _weighted_paths(g, inv))


def adamic_adar_table(g):
    degs = g.degrees.astype(float)
    # nodes below degree 2 are never a shared neighbor
    inv_log = np.divide(
        1.0,
        np.log(np.maximum(degs, 1)),
        out=np.zeros_like(degs),
        where=degs >= 2,
    )
    return ScoreTable.from_matrix(constants.AA, _weighted_paths(g, inv_log))


def cclp_table(g):
    return ScoreTable.from_matrix(
        constants.CCLP, _weighted_paths(g, clustering_coefficients(g))
    )


def local_path(g, cfg=LpConfig()):
    """A^2 + alpha A^3 by sparse two and three hop counting"""
    adj = g.adjacency_matrix
    two_hop = adj @ adj
    scores = two_hop + cfg.alpha * (two_hop @ adj) if cfg.alpha else two_hop
    return ScoreTable.from_matrix(constants.LP, scores)
