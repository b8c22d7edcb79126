"""Mutual information and asymmetric mutual influence between nodes, and
the random walk transition matrices built from node degrees (uniform) or
from asymmetric mutual influence.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from mirw import (
    constants,
    log,
    MirwError,
    InvalidArgumentError,
    UndefinedGraphError,
)

LOGGER = log.get_logger()


@dataclass(frozen=True)
class InfluenceConfig:
    """Settings for the under-determined parts of the influence measures.

    Args:
        cn_mode (str): "plus_two" counts both endpoints in CN(i, j) on top of
            the shared neighbors; "raw" counts shared neighbors only
        negative_ami (str): Treatment of negative AMI weights in the
            transition matrix. Only "clamp_zero" is supported.
        direction (str): "literal_eq9" weights the step i -> j by AMI(i, j);
            "received" weights it by AMI(j, i), the influence i receives
            from j
    """

    cn_mode: str = constants.CN_MODE_PLUS_TWO
    negative_ami: str = constants.NEGATIVE_AMI_CLAMP
    direction: str = constants.DIRECTION_LITERAL

    def __post_init__(self):
        if self.cn_mode not in constants.CN_MODES:
            raise InvalidArgumentError(
                f"Invalid CN mode {self.cn_mode}. Choose from "
                f"{constants.CN_MODES}"
            )
        if self.negative_ami not in constants.NEGATIVE_AMI_MODES:
            raise InvalidArgumentError(
                f"Invalid negative AMI mode {self.negative_ami}"
            )
        if self.direction not in constants.DIRECTIONS:
            raise InvalidArgumentError(
                f"Invalid influence direction {self.direction}. Choose from "
                f"{constants.DIRECTIONS}"
            )

    @property
    def cn_offset(self):
        return 2 if self.cn_mode == constants.CN_MODE_PLUS_TWO else 0

    def to_dict(self):
        return {
            "cn_mode": self.cn_mode,
            "negative_ami": self.negative_ami,
            "direction": self.direction,
        }


DEFAULT_INFLUENCE_CONFIG = InfluenceConfig()


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    """Sparse row-stochastic N x N matrix; entry (i, j) is the probability
    that a walker at i steps to j.
    """

    probs: sparse.csr_matrix

    @property
    def dimension(self):
        return self.probs.shape[0]

    def row(self, node):
        return self.probs.getrow(node).toarray().ravel()

    def to_dense(self):
        return self.probs.toarray()

    def check(self, g, tol=constants.ROW_SUM_TOL):
        """Raise MirwError if this is not a valid transition matrix over the
        edges of g.
        """
        coo = self.probs.tocoo()
        if coo.data.size and (coo.data.min() < 0 or coo.data.max() > 1):
            raise MirwError("Transition probabilities outside of [0, 1]")
        row_sums = np.asarray(self.probs.sum(axis=1)).ravel()
        if np.any(np.abs(row_sums - 1) > tol):
            raise MirwError(
                "Transition matrix rows do not sum to 1 (max deviation "
                f"{np.abs(row_sums - 1).max():.3g})"
            )
        isolated = g.degrees == 0
        for i, j, val in zip(coo.row, coo.col, coo.data):
            if val <= 0:
                continue
            if i == j and not isolated[i]:
                raise MirwError(f"Self transition on non-isolated node {i}")
            if i != j and not g.has_edge(i, j):
                raise MirwError(f"Transition {i} -> {j} is not an edge")
        return True


#############################
# Pairwise influence values #
#############################


def _check_distinct(g, i, j):
    i, j = g.check_node(i), g.check_node(j)
    if i == j:
        raise InvalidArgumentError(
            f"Influence measures require distinct nodes (got {i} twice)"
        )
    return i, j


def node_prior(g, i):
    """Probability of node i being influenced: |Γ(i)| / N"""
    if g.node_count == 0:
        raise UndefinedGraphError("Node prior undefined on an empty graph")
    return g.degree(i) / g.node_count


def cn(g, i, j, cfg=DEFAULT_INFLUENCE_CONFIG):
    """Common neighbor count of i and j, plus 2 in plus_two mode"""
    i, j = _check_distinct(g, i, j)
    shared = np.intersect1d(
        g.adjacency[i], g.adjacency[j], assume_unique=True
    ).size
    return int(shared) + cfg.cn_offset


def _plogp_ratio(p_ij, p_i, p_j):
    """p_ij * ln(p_ij / (p_i * p_j)) with the x ln x -> 0 convention"""
    if p_ij <= 0 or p_i <= 0 or p_j <= 0:
        return 0.0
    return p_ij * math.log(p_ij / (p_i * p_j))


def mutual_information(g, i, j, cfg=DEFAULT_INFLUENCE_CONFIG):
    """Symmetric mutual information between nodes i and j.

    P_ij = CN(i, j) / N. Returns 0 when P_ij = 0 or when either node is
    isolated.
    """
    cn_ij = cn(g, i, j, cfg)
    num_nodes = g.node_count
    return _plogp_ratio(
        cn_ij / num_nodes, node_prior(g, i), node_prior(g, j)
    )


def ami_from_quantities(p_i, p_j, cn_ij, cn_sum_j):
    """Asymmetric mutual influence from its defining quantities.

    Args:
        p_i (float): Prior of the influencing node i
        p_j (float): Prior of the influenced node j
        cn_ij (float): CN(i, j)
        cn_sum_j (float): Sum of CN(j, k) over neighbors k of j

    Returns:
        P_ij * ln(P_ij / (p_i * p_j)) with P_ij = p_i * cn_ij / cn_sum_j, or 0
        when cn_sum_j or P_ij is 0. May be negative.
    """
    if cn_sum_j <= 0:
        return 0.0
    return _plogp_ratio(p_i * cn_ij / cn_sum_j, p_i, p_j)


def ami(g, i, j, cfg=DEFAULT_INFLUENCE_CONFIG):
    """Influence node i exerts on node j"""
    i, j = _check_distinct(g, i, j)
    cn_sum_j = sum(cn(g, j, k, cfg) for k in g.adjacency[j])
    return ami_from_quantities(
        node_prior(g, i), node_prior(g, j), cn(g, i, j, cfg), cn_sum_j
    )


#######################
# Transition matrices #
#######################


def _edge_coords(g):
    """Row and column index of every stored adjacency entry (CSR order)"""
    rows = np.repeat(np.arange(g.node_count), g.degrees)
    return rows, g.adjacency_matrix.indices


def weighted_transition_matrix(g, weights):
    """Row-normalize non-negative edge weights into a TransitionMatrix.

    Args:
        g (Graph): Graph defining the support
        weights (sparse matrix): Weight of the step i -> j at (i, j). Entries
            off the edge set are ignored and negative weights are clamped to
            zero.

    Rows whose clamped weights are all zero fall back to the uniform row
    1 / |Γ(i)|. Isolated nodes get a self transition of probability 1.
    """
    num_nodes = g.node_count
    rows, cols = _edge_coords(g)
    if rows.size:
        vals = np.asarray(sparse.csr_matrix(weights)[rows, cols]).ravel()
    else:
        vals = np.empty(0)
    vals = np.maximum(vals, 0.0)
    row_sums = np.bincount(rows, weights=vals, minlength=num_nodes)
    fallback = (row_sums <= 0) & (g.degrees > 0)
    if fallback.any():
        LOGGER.debug(
            f"{int(fallback.sum())} transition rows without positive weight "
            "fall back to uniform"
        )
        vals = np.where(fallback[rows], 1.0, vals)
        row_sums = np.bincount(rows, weights=vals, minlength=num_nodes)
    data = vals / row_sums[rows] if rows.size else vals
    isolated = np.flatnonzero(g.degrees == 0)
    probs = sparse.csr_matrix(
        (
            np.concatenate([data, np.ones(isolated.size)]),
            (
                np.concatenate([rows, isolated]),
                np.concatenate([cols, isolated]),
            ),
        ),
        shape=(num_nodes, num_nodes),
    )
    probs.sort_indices()
    return TransitionMatrix(probs)


def uniform_transition_matrix(g):
    """Unbiased walk: PR_ij = 1 / degree(i) over the edges of i"""
    return weighted_transition_matrix(g, g.adjacency_matrix)


def ami_weight_matrix(g, cfg=DEFAULT_INFLUENCE_CONFIG):
    """Sparse matrix of directed AMI weights on the edge set, before any
    clamping.

    Entry (i, j) holds AMI(i, j) for direction="literal_eq9" and AMI(j, i)
    for direction="received".
    """
    num_nodes = g.node_count
    rows, cols = _edge_coords(g)
    adj = g.adjacency_matrix
    if rows.size == 0:
        return sparse.csr_matrix((num_nodes, num_nodes))
    shared = np.asarray((adj @ adj)[rows, cols]).ravel()
    cn_edge = shared + cfg.cn_offset
    cn_sum = np.bincount(rows, weights=cn_edge, minlength=num_nodes)
    prior = g.degrees / num_nodes
    if cfg.direction == constants.DIRECTION_LITERAL:
        src, dst = rows, cols
    else:
        src, dst = cols, rows
    # CN is symmetric so cn_edge serves both orientations
    p_src = prior[src]
    p_joint = np.divide(
        p_src * cn_edge,
        cn_sum[dst],
        out=np.zeros(rows.size),
        where=cn_sum[dst] > 0,
    )
    ratio = np.divide(
        p_joint,
        p_src * prior[dst],
        out=np.ones(rows.size),
        where=p_joint > 0,
    )
    vals = p_joint * np.log(ratio)
    return sparse.csr_matrix((vals, (rows, cols)), shape=(num_nodes, num_nodes))


def ami_transition_matrix(g, cfg=DEFAULT_INFLUENCE_CONFIG):
    """Influence-biased walk: PR_ij proportional to the clamped AMI weight of
    neighbor j (see ami_weight_matrix for the direction convention).
    """
    return weighted_transition_matrix(g, ami_weight_matrix(g, cfg))
