from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata
from sklearn.metrics import auc as trapezoid_area, roc_curve

from mirw import (
    constants,
    log,
    InvalidArgumentError,
    UndefinedMetricError,
)

LOGGER = log.get_logger()


######################
# Candidate universe #
######################


def _pair_ids(pairs, num_nodes):
    return pairs[:, 0] * num_nodes + pairs[:, 1]


def snap_ties(vals, decimals=constants.SCORE_TIE_DECIMALS):
    """Round scores to `decimals` digits relative to the largest magnitude.

    Walk propagation leaves round-off of a few ulps on scores that are
    mathematically equal; snapping restores those ties before ranking.
    """
    vals = np.asarray(vals, dtype=float)
    scale = np.abs(vals).max(initial=0)
    if scale == 0:
        return vals
    return np.round(vals / scale, decimals) * scale


@dataclass(frozen=True, eq=False)
class CandidateUniverse:
    """Node pairs not linked in a training graph, labeled as missing (held
    out test edges) or nonexistent (absent from the original graph).

    Args:
        pairs (np.ndarray): (M, 2) node pairs with i < j in lexicographic order
        is_missing (np.ndarray): Boolean class of each pair
    """

    pairs: np.ndarray
    is_missing: np.ndarray

    @classmethod
    def from_train(cls, train, test_edges):
        num_nodes = train.node_count
        rows, cols = np.triu_indices(num_nodes, k=1)
        cand = np.stack([rows, cols], axis=1).astype(np.int64)
        keep = ~np.isin(
            _pair_ids(cand, num_nodes), _pair_ids(train.edges, num_nodes)
        )
        cand = cand[keep]
        test_edges = np.sort(
            np.asarray(test_edges, dtype=np.int64).reshape(-1, 2), axis=1
        )
        is_missing = np.isin(
            _pair_ids(cand, num_nodes), _pair_ids(test_edges, num_nodes)
        )
        return cls(cand, is_missing)

    @classmethod
    def from_split(cls, split):
        return cls.from_train(split.train, split.test_edges)

    @property
    def size(self):
        return self.is_missing.size

    @property
    def missing_count(self):
        return int(self.is_missing.sum())

    @property
    def nonexistent_count(self):
        return self.size - self.missing_count

    def check_classes(self):
        if self.missing_count == 0 or self.nonexistent_count == 0:
            raise UndefinedMetricError(
                f"Metric undefined with {self.missing_count} missing and "
                f"{self.nonexistent_count} nonexistent candidate pairs"
            )

    def candidate_scores(self, scores):
        """Scores of the universe pairs, snapped with `snap_ties`"""
        return snap_ties(scores.pair_scores(self.pairs))

    def class_scores(self, scores):
        """Split the scores of the universe pairs into missing and
        nonexistent arrays.
        """
        vals = self.candidate_scores(scores)
        return vals[self.is_missing], vals[~self.is_missing]


###########
# Metrics #
###########


def auc(
    scores,
    universe,
    mode=constants.AUC_EXACT,
    num_samples=constants.DEFAULT_AUC_SAMPLES,
    seed=0,
):
    """Probability that a missing pair outscores a nonexistent pair, ties
    counting one half.

    Args:
        scores (ScoreTable): Pair scores
        universe (CandidateUniverse): Labeled candidate pairs
        mode (str): "exact" computes the rank (Mann-Whitney) statistic over
            all missing x nonexistent comparisons. "sampled" draws
            `num_samples` random comparisons with `seed`.
    """
    universe.check_classes()
    pos, neg = universe.class_scores(scores)
    if mode == constants.AUC_EXACT:
        ranks = rankdata(np.concatenate([pos, neg]), method="average")
        u_stat = ranks[: pos.size].sum() - pos.size * (pos.size + 1) / 2
        return float(u_stat / (pos.size * neg.size))
    if mode == constants.AUC_SAMPLED:
        if num_samples < 1:
            raise InvalidArgumentError(
                f"AUC sample count must be >= 1 (got {num_samples})"
            )
        rng = np.random.default_rng(seed)
        pos_draw = pos[rng.integers(pos.size, size=num_samples)]
        neg_draw = neg[rng.integers(neg.size, size=num_samples)]
        higher = np.count_nonzero(pos_draw > neg_draw)
        tied = np.count_nonzero(pos_draw == neg_draw)
        return (higher + 0.5 * tied) / num_samples
    raise InvalidArgumentError(
        f"Invalid AUC mode {mode}. Choose from {constants.AUC_MODES}"
    )


def precision_at(scores, universe, top_l, tie_seed=0):
    """Fraction of missing pairs among the `top_l` highest scored candidates.
    Exact score ties are ordered by a shuffle seeded with `tie_seed`.
    """
    if not 1 <= top_l <= universe.size:
        raise InvalidArgumentError(
            f"Top L must be in [1, {universe.size}] (got {top_l})"
        )
    vals = universe.candidate_scores(scores)
    tie_break = np.random.default_rng(tie_seed).permutation(universe.size)
    order = np.lexsort((tie_break, -vals))
    return float(np.count_nonzero(universe.is_missing[order[:top_l]]) / top_l)


def roc_points(scores, universe, max_points=constants.ROC_MAX_POINTS):
    """ROC curve with one point per distinct score threshold.

    Returns:
        (K, 2) array of (fpr, tpr) from (0, 0) to (1, 1). When `max_points`
        is set longer curves are down-sampled uniformly keeping both
        endpoints.
    """
    universe.check_classes()
    vals = universe.candidate_scores(scores)
    fpr, tpr, _ = roc_curve(universe.is_missing, vals, drop_intermediate=False)
    points = np.stack([fpr, tpr], axis=1)
    if max_points is not None and points.shape[0] > max_points:
        keep = np.unique(
            np.linspace(0, points.shape[0] - 1, max_points).round().astype(int)
        )
        points = points[keep]
    return points


def roc_area(points):
    """Trapezoidal area under (fpr, tpr) points"""
    return float(trapezoid_area(points[:, 0], points[:, 1]))
