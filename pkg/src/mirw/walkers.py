"""Deterministic finite-step walk propagation and the walk based similarity
indices (local, superposed, influence-biased and restart walks).
"""

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from mirw import (
    constants,
    log,
    util,
    MirwError,
    ConvergenceError,
    InvalidArgumentError,
    InvalidNodeError,
    UndefinedGraphError,
)
from mirw.graph import graph_stats
from mirw.influence import (
    DEFAULT_INFLUENCE_CONFIG,
    ami_transition_matrix,
    uniform_transition_matrix,
)

LOGGER = log.get_logger()


@dataclass(frozen=True, eq=False)
class ReachDistribution:
    """Probability of a walker started at `source` being at each node after
    `step` steps.
    """

    source: int
    step: int
    probs: np.ndarray

    def check(self, tol=constants.ROW_SUM_TOL):
        if self.probs.min(initial=0) < 0:
            raise MirwError("Negative reach probability")
        if abs(self.probs.sum() - 1) > tol:
            raise MirwError(
                f"Reach distribution sums to {self.probs.sum()} (source "
                f"{self.source}, step {self.step})"
            )
        return True


@dataclass(frozen=True, eq=False)
class ScoreTable:
    """Similarity score for every unordered node pair.

    Stored as a dense symmetric N x N matrix with a zero diagonal. Use
    `ScoreTable.from_matrix` which keeps the strict upper triangle of the
    provided matrix and mirrors it.
    """

    method: str
    matrix: np.ndarray

    def __post_init__(self):
        if not np.isfinite(self.matrix).all():
            raise MirwError(f"Non-finite scores produced by {self.method}")

    @classmethod
    def from_matrix(cls, method, mat):
        if sparse.issparse(mat):
            mat = mat.toarray()
        upper = np.triu(np.asarray(mat, dtype=float), k=1)
        scores = upper + upper.T
        scores.setflags(write=False)
        return cls(method, scores)

    @property
    def dimension(self):
        return self.matrix.shape[0]

    def score(self, i, j):
        return float(self.matrix[i, j])

    def pair_scores(self, pairs):
        """Scores for an (M, 2) array of node pairs"""
        pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        return self.matrix[pairs[:, 0], pairs[:, 1]]


###############
# Propagation #
###############


def propagate(P, source, t):
    """Reach distribution of a walker started at `source` after t steps of
    transition matrix P (exact, no sampling).
    """
    if t < 0:
        raise InvalidArgumentError(f"Number of steps must be >= 0 (got {t})")
    num_nodes = P.dimension
    try:
        source = int(source)
    except (TypeError, ValueError):
        raise InvalidArgumentError(f"Invalid source node {source!r}")
    if not 0 <= source < num_nodes:
        raise InvalidNodeError(
            f"Source node {source} outside of [0, {num_nodes})"
        )
    probs = np.zeros(num_nodes)
    probs[source] = 1.0
    probs_t = P.probs.T.tocsr()
    for _ in range(t):
        probs = probs_t @ probs
    return ReachDistribution(source, t, probs)


def _step_block(bounds, reach, probs_t):
    """Advance the reach rows of a block of sources by one step"""
    start, end = bounds
    return np.asarray(probs_t @ reach[start:end].T).T


def _check_walk_args(g, t):
    if t < 1:
        raise InvalidArgumentError(f"Walk length must be >= 1 (got {t})")
    if g.edge_count == 0:
        raise UndefinedGraphError("Walk scores undefined on an edgeless graph")


def iter_walk_scores(
    g, P, t_max, superposed=False, method=constants.LRW, num_workers=1
):
    """Walk similarity for every length 1..t_max from a single propagation
    pass.

    The length l score of a pair is (k_i / 2|E|) pi_ij(l) + (k_j / 2|E|)
    pi_ji(l). With `superposed` the yielded table is the running sum of
    these scores over lengths 1..l.

    Yields:
        2-tuples of walk length and ScoreTable
    """
    _check_walk_args(g, t_max)
    num_nodes = g.node_count
    weight = g.degrees / (2.0 * g.edge_count)
    probs_t = P.probs.T.tocsr()
    reach = np.eye(num_nodes)
    total = np.zeros((num_nodes, num_nodes))
    for length in range(1, t_max + 1):
        blocks = util.ordered_map(
            _step_block,
            util.iter_chunks(num_nodes, constants.SOURCE_CHUNK_SIZE),
            num_workers=num_workers,
            args=(reach, probs_t),
            name="propagate",
        )
        reach = np.vstack(blocks)
        weighted = weight[:, None] * reach
        step_scores = weighted + weighted.T
        if superposed:
            total = total + step_scores
            yield length, ScoreTable.from_matrix(method, total)
        else:
            yield length, ScoreTable.from_matrix(method, step_scores)


def _last_table(tables):
    table = None
    for _, table in tables:
        pass
    return table


def lrw_score(g, t, num_workers=1):
    """Local random walk similarity after exactly t steps"""
    _check_walk_args(g, t)
    return _last_table(
        iter_walk_scores(
            g,
            uniform_transition_matrix(g),
            t,
            method=constants.LRW,
            num_workers=num_workers,
        )
    )


def srw_score(g, t, num_workers=1):
    """Superposed random walk similarity: local walk scores summed over
    lengths 1..t
    """
    _check_walk_args(g, t)
    return _last_table(
        iter_walk_scores(
            g,
            uniform_transition_matrix(g),
            t,
            superposed=True,
            method=constants.SRW,
            num_workers=num_workers,
        )
    )


def mirw_score(g, t, cfg=DEFAULT_INFLUENCE_CONFIG, num_workers=1):
    """Superposed walk similarity driven by the asymmetric mutual influence
    transition matrix.
    """
    _check_walk_args(g, t)
    return _last_table(
        iter_walk_scores(
            g,
            ami_transition_matrix(g, cfg),
            t,
            superposed=True,
            method=constants.MIRW,
            num_workers=num_workers,
        )
    )


############################
# Random walk with restart #
############################


def rwr_steady_state(
    P,
    sources,
    c=constants.DEFAULT_RWR_C,
    tol=constants.DEFAULT_RWR_TOL,
    max_iter=constants.DEFAULT_RWR_MAX_ITER,
):
    """Steady state of a walker that moves along P with probability c and
    returns to its source with probability 1 - c.

    Args:
        P (TransitionMatrix): Walk transition matrix
        sources (np.ndarray): Source node of each returned row
        c (float): Continue probability in (0, 1)
        tol (float): Maximum L1 change of any row at convergence
        max_iter (int): Maximum number of iterations

    Returns:
        2-tuple of the (len(sources), N) steady-state matrix and the list of
        residuals per iteration
    """
    if not 0 < c < 1:
        raise InvalidArgumentError(
            f"Continue probability must be in (0, 1) (got {c})"
        )
    sources = np.asarray(sources, dtype=np.int64)
    restart = np.zeros((sources.size, P.dimension))
    restart[np.arange(sources.size), sources] = 1.0 - c
    probs_t = P.probs.T.tocsr()
    steady = restart / (1.0 - c)
    residuals = []
    for _ in range(max_iter):
        updated = restart + c * np.asarray(probs_t @ steady.T).T
        residual = (
            float(np.abs(updated - steady).sum(axis=1).max())
            if sources.size
            else 0.0
        )
        residuals.append(residual)
        steady = updated
        if residual <= tol:
            return steady, residuals
    raise ConvergenceError(
        f"Restart walk did not converge in {max_iter} iterations "
        f"(residual {residuals[-1]:.3g} > {tol:.3g})",
        residual=residuals[-1] if residuals else None,
        iterations=max_iter,
    )


def _rwr_block(bounds, P, c, tol, max_iter):
    steady, residuals = rwr_steady_state(
        P, np.arange(*bounds), c, tol, max_iter
    )
    LOGGER.debug(
        f"Restart walk sources {bounds[0]}-{bounds[1]} converged after "
        f"{len(residuals)} iterations"
    )
    return steady


def rwr_score(
    g,
    c=constants.DEFAULT_RWR_C,
    tol=constants.DEFAULT_RWR_TOL,
    max_iter=constants.DEFAULT_RWR_MAX_ITER,
    num_workers=1,
):
    """Random walk with restart similarity s_ij = q_ij + q_ji"""
    if not 0 < c < 1:
        raise InvalidArgumentError(
            f"Continue probability must be in (0, 1) (got {c})"
        )
    if g.edge_count == 0:
        raise UndefinedGraphError("Walk scores undefined on an edgeless graph")
    P = uniform_transition_matrix(g)
    blocks = util.ordered_map(
        _rwr_block,
        util.iter_chunks(g.node_count, constants.SOURCE_CHUNK_SIZE),
        num_workers=num_workers,
        args=(P, c, tol, max_iter),
        name="rwr",
    )
    steady = np.vstack(blocks)
    return ScoreTable.from_matrix(constants.RWR, steady + steady.T)


###############
# Walk length #
###############


def walk_length_from_aspl(aspl):
    """Round half up and clamp to the supported walk length range"""
    return min(
        constants.MAX_WALK_LENGTH,
        max(constants.MIN_WALK_LENGTH, util.round_half_up(aspl)),
    )


def select_walk_length(g, num_workers=1):
    """Walk length matched to the average shortest path length of g"""
    if g.edge_count == 0:
        raise InvalidArgumentError(
            "Walk length selection requires at least one edge"
        )
    aspl = graph_stats(g, num_workers=num_workers).aspl
    length = walk_length_from_aspl(aspl)
    LOGGER.debug(f"ASPL {aspl:.4f} selects walk length {length}")
    return length
