"""Repeated random holdout benchmark of link prediction methods and
training size sweeps.
"""

import json
import time
import dataclasses
from pathlib import Path
from dataclasses import dataclass, field
from typing import Optional, Tuple

import toml
import numpy as np
import pandas as pd
from tqdm import tqdm

from mirw import (
    __version__,
    constants,
    datasets,
    log,
    util,
    validate,
    InvalidArgumentError,
)
from mirw.influence import (
    InfluenceConfig,
    ami_transition_matrix,
    uniform_transition_matrix,
)
from mirw.local_indices import (
    LpConfig,
    adamic_adar_table,
    cclp_table,
    jaccard_table,
    local_path,
    resource_allocation_table,
)
from mirw.walkers import iter_walk_scores, rwr_score, select_walk_length

LOGGER = log.get_logger()


#########
# Split #
#########


@dataclass(frozen=True, eq=False)
class TrainTestSplit:
    """Random holdout of a graph's edges.

    Args:
        train (Graph): Original graph without the test edges (all nodes kept)
        test_edges (np.ndarray): (K, 2) held out edges with i < j
        ratio (float): Requested test fraction
        seed (int): Seed of the edge sample
    """

    train: object
    test_edges: np.ndarray
    ratio: float
    seed: int


def holdout_size(num_edges, ratio):
    """Rounded test set size, at least 1 and leaving at least 1 train edge"""
    return min(num_edges - 1, max(1, util.round_half_up(ratio * num_edges)))


def split(g, ratio, seed):
    if not 0 < ratio < 1:
        raise InvalidArgumentError(
            f"Test ratio must be in (0, 1) (got {ratio})"
        )
    if g.edge_count < 2:
        raise InvalidArgumentError(
            f"Holdout split requires at least 2 edges (got {g.edge_count})"
        )
    rng = np.random.default_rng(seed)
    test_idx = np.sort(
        rng.choice(
            g.edge_count,
            size=holdout_size(g.edge_count, ratio),
            replace=False,
        )
    )
    test_edges = g.edges[test_idx]
    return TrainTestSplit(g.without_edges(test_edges), test_edges, ratio, seed)


##########
# Config #
##########


def random_seed():
    return int(np.random.randint(0, np.iinfo(np.uint32).max, dtype=np.uint32))


@dataclass
class BenchConfig:
    dataset: str
    methods: Tuple[str, ...] = constants.METHODS
    test_ratio: float = constants.DEFAULT_TEST_RATIO
    trials: int = constants.DEFAULT_TRIALS
    seed: Optional[int] = None
    walk_length: Optional[int] = None
    sweep_t: Optional[Tuple[int, ...]] = None
    lp: LpConfig = field(default_factory=LpConfig)
    rwr_c: float = constants.DEFAULT_RWR_C
    rwr_tol: float = constants.DEFAULT_RWR_TOL
    rwr_max_iter: int = constants.DEFAULT_RWR_MAX_ITER
    influence: InfluenceConfig = field(default_factory=InfluenceConfig)
    auc_mode: str = constants.AUC_EXACT
    auc_samples: int = constants.DEFAULT_AUC_SAMPLES
    # None selects L = number of test edges
    top_l: Optional[int] = None
    out_dir: Optional[str] = None
    num_workers: int = 1
    record_timing: bool = False

    def __post_init__(self):
        self.methods = tuple(self.methods)
        if len(self.methods) == 0:
            raise InvalidArgumentError("No methods selected")
        unknown = [m for m in self.methods if m not in constants.METHODS]
        if unknown:
            raise InvalidArgumentError(
                f"Unknown methods {unknown}. Choose from {constants.METHODS}"
            )
        if not 0 < self.test_ratio < 1:
            raise InvalidArgumentError(
                f"Test ratio must be in (0, 1) (got {self.test_ratio})"
            )
        if self.trials < 1:
            raise InvalidArgumentError(
                f"Number of trials must be >= 1 (got {self.trials})"
            )
        if self.walk_length is not None and self.walk_length < 1:
            raise InvalidArgumentError(
                f"Walk length must be >= 1 (got {self.walk_length})"
            )
        if self.sweep_t is not None:
            self.sweep_t = tuple(sorted(set(self.sweep_t)))
            if len(self.sweep_t) == 0 or self.sweep_t[0] < 1:
                raise InvalidArgumentError(
                    f"Walk lengths must be >= 1 (got {self.sweep_t})"
                )
        if self.top_l is not None and self.top_l < 1:
            raise InvalidArgumentError(f"Top L must be >= 1 (got {self.top_l})")
        if self.auc_mode not in constants.AUC_MODES:
            raise InvalidArgumentError(
                f"Invalid AUC mode {self.auc_mode}. Choose from "
                f"{constants.AUC_MODES}"
            )
        if self.seed is None:
            self.seed = random_seed()
            LOGGER.info(f"Seed selected is {self.seed}")

    def trial_seed(self, trial):
        return self.seed + trial

    def to_dict(self):
        """Configuration echo with unset values dropped"""
        conf = {
            "dataset": self.dataset,
            "methods": list(self.methods),
            "test_ratio": self.test_ratio,
            "trials": self.trials,
            "seed": self.seed,
            "walk_length": self.walk_length,
            "sweep_t": None if self.sweep_t is None else list(self.sweep_t),
            "lp_alpha": self.lp.alpha,
            "rwr_c": self.rwr_c,
            "rwr_tol": self.rwr_tol,
            "rwr_max_iter": self.rwr_max_iter,
            "influence": self.influence.to_dict(),
            "auc_mode": self.auc_mode,
            "auc_samples": self.auc_samples,
            "top_l": constants.TOP_L_AUTO if self.top_l is None else self.top_l,
            "record_timing": self.record_timing,
            "version": __version__,
        }
        return dict((key, val) for key, val in conf.items() if val is not None)


##########
# Report #
##########


@dataclass
class TrialRecord:
    dataset: str
    method: str
    trial: int
    seed: int
    auc: float
    precision: float
    top_l: int
    t: Optional[int]
    wall_ms: float

    def as_row(self, record_timing=False):
        return {
            "dataset": self.dataset,
            "method": self.method,
            "trial": self.trial,
            "seed": self.seed,
            "auc": self.auc,
            "precision": self.precision,
            "L": self.top_l,
            "t": self.t,
            "wall_ms": self.wall_ms if record_timing else None,
        }


@dataclass
class EvalReport:
    dataset: str
    config: BenchConfig
    walk_lengths: Tuple[int, ...]
    records: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    roc_curves: dict = field(default_factory=dict)

    @property
    def completed(self):
        return len(self.failures) == 0

    def metrics_frame(self):
        frame = pd.DataFrame(
            [
                rec.as_row(self.config.record_timing)
                for rec in self.records
            ],
            columns=list(constants.METRICS_COLUMNS),
        )
        frame["t"] = frame["t"].astype("Int64")
        return frame

    def aggregates(self):
        """Mean and population standard deviation of each metric per method
        and walk length, in method order.
        """
        frame = self.metrics_frame()
        if frame.shape[0] == 0:
            return pd.DataFrame(
                columns=[
                    "method",
                    "t",
                    "trials",
                    "mean_auc",
                    "std_auc",
                    "mean_precision",
                    "std_precision",
                ]
            )
        agg = (
            frame.groupby(["method", "t"], sort=False, dropna=False)
            .agg(
                trials=("trial", "count"),
                mean_auc=("auc", "mean"),
                std_auc=("auc", lambda x: x.std(ddof=0)),
                mean_precision=("precision", "mean"),
                std_precision=("precision", lambda x: x.std(ddof=0)),
            )
            .reset_index()
        )
        return agg

    def to_json(self):
        aggs = self.aggregates().astype(object)
        aggs = aggs.where(pd.notna(aggs), None)
        return {
            "dataset": self.dataset,
            "config": self.config.to_dict(),
            "walk_lengths": list(self.walk_lengths),
            "completed": self.completed,
            "records": [
                rec.as_row(self.config.record_timing) for rec in self.records
            ],
            "aggregates": aggs.to_dict(orient="records"),
            "failures": self.failures,
            "roc_files": dict(
                (key, constants.ROC_FILENAME_TMPLT.format(key))
                for key in self.roc_curves
            ),
        }

    def summary_rows(self):
        """Method x metric grid shown on stdout"""
        rows = []
        for _, row in self.aggregates().iterrows():
            rows.append(
                (
                    row["method"],
                    "" if pd.isna(row["t"]) else int(row["t"]),
                    int(row["trials"]),
                    f"{row['mean_auc']:.4f} +/- {row['std_auc']:.4f}",
                    f"{row['mean_precision']:.4f} +/- "
                    f"{row['std_precision']:.4f}",
                )
            )
        return rows


##################
# Method scoring #
##################


def score_method(method, train, cfg, lengths=(), num_workers=1):
    """Score every node pair of the train graph with one method.

    Yields:
        2-tuples of walk length (None for methods without one) and ScoreTable
    """
    if method in constants.WALK_METHODS:
        if method == constants.MIRW:
            P = ami_transition_matrix(train, cfg.influence)
        else:
            P = uniform_transition_matrix(train)
        wanted = set(lengths)
        for length, table in iter_walk_scores(
            train,
            P,
            max(lengths),
            superposed=method != constants.LRW,
            method=method,
            num_workers=num_workers,
        ):
            if length in wanted:
                yield length, table
    elif method == constants.RWR:
        yield None, rwr_score(
            train,
            cfg.rwr_c,
            cfg.rwr_tol,
            cfg.rwr_max_iter,
            num_workers=num_workers,
        )
    elif method == constants.LP:
        yield None, local_path(train, cfg.lp)
    else:
        yield None, {
            constants.JC: jaccard_table,
            constants.RA: resource_allocation_table,
            constants.AA: adamic_adar_table,
            constants.CCLP: cclp_table,
        }[method](train)


def roc_key(method, length, lengths):
    if length is None or len(lengths) <= 1:
        return method
    return f"{method}_t{length}"


def run_trial(trial, g, dataset, cfg, lengths, num_workers=1):
    """Split, score every method and evaluate a single trial.

    The wall time of a record covers the scoring and evaluation done since
    the previous record of the same method.

    Returns:
        3-tuple of TrialRecord list, failure list and ROC curves (trial 0
        only) keyed by method
    """
    seed = cfg.trial_seed(trial)
    holdout = split(g, cfg.test_ratio, seed)
    universe = validate.CandidateUniverse.from_split(holdout)
    top_l = (
        holdout.test_edges.shape[0] if cfg.top_l is None else cfg.top_l
    )
    records, failures, rocs = [], [], {}
    for method in cfg.methods:
        try:
            start = time.perf_counter()
            for length, table in score_method(
                method, holdout.train, cfg, lengths, num_workers
            ):
                auc = validate.auc(
                    table, universe, cfg.auc_mode, cfg.auc_samples, seed
                )
                precision = validate.precision_at(
                    table, universe, top_l, tie_seed=seed
                )
                if trial == 0:
                    rocs[roc_key(method, length, lengths)] = (
                        validate.roc_points(table, universe)
                    )
                now = time.perf_counter()
                wall_ms = (now - start) * 1000
                start = now
                records.append(
                    TrialRecord(
                        dataset,
                        method,
                        trial,
                        seed,
                        auc,
                        precision,
                        top_l,
                        length,
                        wall_ms,
                    )
                )
                LOGGER.debug(
                    f"trial {trial} {method} t={length} auc={auc:.4f} "
                    f"precision={precision:.4f}"
                )
        except Exception as e:
            LOGGER.warning(f"{method} failed on trial {trial}: {e}")
            failures.append(
                {
                    "method": method,
                    "trial": trial,
                    "error": f"{type(e).__name__}: {e}",
                }
            )
    return records, failures, rocs


def resolve_walk_lengths(g, cfg):
    if not any(m in constants.WALK_METHODS for m in cfg.methods):
        return ()
    if cfg.sweep_t is not None:
        return cfg.sweep_t
    if cfg.walk_length is not None:
        return (cfg.walk_length,)
    return (select_walk_length(g, num_workers=cfg.num_workers),)


def run_benchmark(cfg, graph=None, progress=False):
    """Run every trial of a benchmark configuration.

    Args:
        cfg (BenchConfig): Benchmark configuration
        graph (Graph): Graph to benchmark. Default: load `cfg.dataset`.
        progress (bool): Show a trial progress bar

    Walk length is selected once on the full graph unless set in `cfg`.
    Trials run in parallel when `cfg.num_workers` > 1 and are assembled in
    trial order, so the report does not depend on the number of workers.
    """
    if graph is None:
        dataset, graph = datasets.load_dataset(cfg.dataset)
    else:
        dataset = datasets.dataset_name(cfg.dataset)
    lengths = resolve_walk_lengths(graph, cfg)
    if lengths:
        LOGGER.info(f"Walk lengths: {', '.join(map(str, lengths))}")
    LOGGER.info(
        f"Running {cfg.trials} trials of {', '.join(cfg.methods)} on "
        f"{dataset} (seed {cfg.seed})"
    )
    parallel_trials = cfg.num_workers > 1 and cfg.trials > 1
    inner_workers = 1 if parallel_trials else cfg.num_workers
    pbar = tqdm(
        total=cfg.trials,
        desc="Trials",
        dynamic_ncols=True,
        leave=False,
        disable=not progress,
    )
    results = [None] * cfg.trials
    if parallel_trials:
        for idx, res, err in util.MultitaskMap(
            run_trial,
            enumerate(range(cfg.trials)),
            num_workers=min(cfg.num_workers, cfg.trials),
            args=(graph, dataset, cfg, lengths, inner_workers),
            name="trials",
        ):
            if err is not None:
                pbar.close()
                raise err
            results[idx] = res
            pbar.update()
    else:
        for trial in range(cfg.trials):
            results[trial] = run_trial(
                trial, graph, dataset, cfg, lengths, inner_workers
            )
            pbar.update()
    pbar.close()

    report = EvalReport(dataset, cfg, lengths)
    for records, failures, rocs in results:
        report.records.extend(records)
        report.failures.extend(failures)
        report.roc_curves.update(rocs)
    if not report.completed:
        LOGGER.warning(
            f"{len(report.failures)} method trial(s) failed. See report."
        )
    return report


def training_size_sweep(cfg, train_fractions, graph=None, progress=False):
    """Run a benchmark per training fraction (test ratio = 1 - fraction).

    Returns:
        List of (training fraction, EvalReport) in input order
    """
    if len(train_fractions) == 0:
        raise InvalidArgumentError("No training fractions provided")
    for frac in train_fractions:
        if not 0 < frac < 1:
            raise InvalidArgumentError(
                f"Training fraction must be in (0, 1) (got {frac})"
            )
    if graph is None:
        _, graph = datasets.load_dataset(cfg.dataset)
    reports = []
    for frac in train_fractions:
        LOGGER.info(f"Training fraction {frac}")
        frac_cfg = dataclasses.replace(cfg, test_ratio=round(1 - frac, 10))
        reports.append((frac, run_benchmark(frac_cfg, graph, progress)))
    return reports


###########
# Writers #
###########


def _json_scalar(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"{type(obj).__name__} is not JSON serializable")


def write_report(report, out_dir):
    """Write report.json, metrics.csv, roc_<method>.csv and config.toml"""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / constants.REPORT_FILENAME, "w") as fh:
        json.dump(
            report.to_json(),
            fh,
            indent=2,
            sort_keys=True,
            default=_json_scalar,
        )
        fh.write("\n")
    report.metrics_frame().to_csv(
        out_dir / constants.METRICS_FILENAME, index=False
    )
    for key, points in report.roc_curves.items():
        pd.DataFrame(points, columns=["fpr", "tpr"]).to_csv(
            out_dir / constants.ROC_FILENAME_TMPLT.format(key), index=False
        )
    with open(out_dir / constants.CONFIG_FILENAME, "w") as fh:
        toml.dump(report.config.to_dict(), fh)
    LOGGER.info(f"Wrote report to {out_dir}")


def sweep_frame(reports):
    rows = []
    for frac, report in reports:
        aggs = report.aggregates()
        for _, row in aggs.iterrows():
            rows.append(
                {
                    "ratio": frac,
                    "method": row["method"],
                    "t": row["t"],
                    "mean_auc": row["mean_auc"],
                    "std_auc": row["std_auc"],
                }
            )
    frame = pd.DataFrame(
        rows, columns=["ratio", "method", "t", "mean_auc", "std_auc"]
    )
    frame["t"] = frame["t"].astype("Int64")
    return frame


def sweep_rows(reports):
    """Rows of the sweep table shown on stdout"""
    return [
        (
            row["ratio"],
            row["method"],
            "" if pd.isna(row["t"]) else int(row["t"]),
            row["mean_auc"],
            row["std_auc"],
        )
        for _, row in sweep_frame(reports).iterrows()
    ]


def sweep_subdir(frac):
    return f"train_{frac:.2f}"


def write_sweep(reports, out_dir):
    """Write one report directory per training fraction and sweep.csv"""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for frac, report in reports:
        write_report(report, out_dir / sweep_subdir(frac))
    sweep_frame(reports).to_csv(out_dir / constants.SWEEP_FILENAME, index=False)
