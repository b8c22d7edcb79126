"""Parsers module provides all implementations of command line interfaces.

Each command implements a `register_` function and a `run_` function. The
register function takes a parser and adds the appropriate entries for the
command. The run function accepts the parser.parse_args() object, executes
the command and returns the process exit code. Run functions contain minimal
logic. Imports required for a particular command are made inside of the run
functions to avoid loading all modules when a user simply wants the help
string.
"""

import os
import sys
import argparse
from pathlib import Path
from shutil import rmtree

from mirw import constants
from mirw import log, MirwError

LOGGER = log.get_logger()


class SubcommandHelpFormatter(
    argparse.RawDescriptionHelpFormatter,
    argparse.ArgumentDefaultsHelpFormatter,
):
    """Helper function to prettier print subcommand help. This removes some
    extra lines of output when a final command parser is not selected.
    """

    def _format_action(self, action):
        parts = super(SubcommandHelpFormatter, self)._format_action(action)
        if action.nargs == argparse.PARSER:
            parts = "\n".join(parts.split("\n")[1:])
        return parts


##################
# Argument types #
##################


def method_list(value):
    """Comma separated method names or "all" """
    if value.strip().lower() == constants.ALL_METHODS_ALIAS:
        return constants.METHODS
    methods = tuple(m.strip().lower() for m in value.split(",") if m.strip())
    unknown = [m for m in methods if m not in constants.METHODS]
    if unknown or not methods:
        raise argparse.ArgumentTypeError(
            f"invalid method(s) {', '.join(unknown) or repr(value)}. Valid "
            f"methods: {', '.join(constants.METHODS)} or "
            f"{constants.ALL_METHODS_ALIAS}"
        )
    # drop repeats keeping first occurrence
    return tuple(dict.fromkeys(methods))


def open_unit_float(value):
    try:
        fval = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid float value: {value!r}")
    if not 0 < fval < 1:
        raise argparse.ArgumentTypeError(
            f"value must be in the open interval (0, 1): {value}"
        )
    return fval


def open_unit_float_list(value):
    return [open_unit_float(tok) for tok in value.split(",") if tok.strip()]


def positive_int(value):
    try:
        ival = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid int value: {value!r}")
    if ival < 1:
        raise argparse.ArgumentTypeError(f"value must be >= 1: {value}")
    return ival


def non_negative_float(value):
    try:
        fval = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid float value: {value!r}")
    if not fval >= 0:
        raise argparse.ArgumentTypeError(f"value must be >= 0: {value}")
    return fval


def walk_length_list(value):
    """Walk lengths as a range ("1-7") or comma separated list ("2,3,5")"""
    try:
        if "-" in value:
            start, end = value.split("-")
            lengths = list(range(int(start), int(end) + 1))
        else:
            lengths = [int(tok) for tok in value.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid walk lengths: {value!r}")
    if not lengths or min(lengths) < 1:
        raise argparse.ArgumentTypeError(
            f"walk lengths must be a non-empty list of ints >= 1: {value!r}"
        )
    return tuple(sorted(set(lengths)))


def top_l_value(value):
    if value == constants.TOP_L_AUTO:
        return None
    return positive_int(value)


####################
# Shared arguments #
####################


def add_output_arguments(subparser, default_out):
    out_grp = subparser.add_argument_group("Output Arguments")
    out_grp.add_argument(
        "--out",
        default=default_out,
        help="Output directory. Default: %(default)s",
    )
    out_grp.add_argument(
        "--overwrite",
        action="store_true",
        help="Overwrite existing output directory if existing.",
    )
    out_grp.add_argument(
        "--log-filename",
        help="Log filename. Default: log.txt in the output directory.",
    )
    out_grp.add_argument(
        "--quiet",
        action="store_true",
        help="Only log warnings and errors to the console.",
    )
    out_grp.add_argument(
        "--record-timing",
        action="store_true",
        help="Write wall clock time per method and trial to the outputs. "
        "Outputs are then no longer identical between runs.",
    )


def add_compute_arguments(subparser):
    comp_grp = subparser.add_argument_group("Compute Arguments")
    comp_grp.add_argument(
        "--threads",
        type=positive_int,
        default=os.cpu_count() or 1,
        help="Number of worker threads. Results do not depend on this "
        "value. Default: %(default)d",
    )


def add_benchmark_arguments(subparser):
    subparser.add_argument(
        "dataset",
        help="Edge list file or registered dataset name "
        f"({', '.join(constants.REGISTERED_DATASETS)}). Registered names are "
        f"searched in ${constants.DATA_DIR_ENV} first.",
    )

    prot_grp = subparser.add_argument_group("Protocol Arguments")
    prot_grp.add_argument(
        "--trials",
        type=positive_int,
        default=constants.DEFAULT_TRIALS,
        help="Number of random holdout trials. Default: %(default)d",
    )
    prot_grp.add_argument(
        "--seed",
        type=int,
        help="Master seed. Trial k uses seed + k. Default: random seed "
        "(logged and recorded in the report).",
    )

    mthd_grp = subparser.add_argument_group("Method Arguments")
    mthd_grp.add_argument(
        "--methods",
        type=method_list,
        default=constants.METHODS,
        help="Comma separated methods or 'all'. Default: all",
    )
    mthd_grp.add_argument(
        "--walk-length",
        type=positive_int,
        help="Walk length for lrw, srw and mirw. Default: rounded average "
        "shortest path length of the network clamped to "
        f"[{constants.MIN_WALK_LENGTH}, {constants.MAX_WALK_LENGTH}]",
    )
    mthd_grp.add_argument(
        "--sweep-t",
        type=walk_length_list,
        help="Score lrw, srw and mirw at each of these walk lengths on the "
        "same splits, e.g. '1-7' or '2,3,5'. Overrides --walk-length.",
    )
    mthd_grp.add_argument(
        "--lp-alpha",
        type=non_negative_float,
        default=constants.DEFAULT_LP_ALPHA,
        help="Weight of length 3 paths in the local path index. "
        "Default: %(default)s",
    )
    mthd_grp.add_argument(
        "--rwr-c",
        type=open_unit_float,
        default=constants.DEFAULT_RWR_C,
        help="Random walk with restart continue probability. "
        "Default: %(default)s",
    )
    mthd_grp.add_argument(
        "--rwr-tol",
        type=float,
        default=constants.DEFAULT_RWR_TOL,
        help="Random walk with restart convergence tolerance. "
        "Default: %(default)s",
    )
    mthd_grp.add_argument(
        "--rwr-max-iter",
        type=positive_int,
        default=constants.DEFAULT_RWR_MAX_ITER,
        help="Random walk with restart iteration limit. Default: %(default)d",
    )

    infl_grp = subparser.add_argument_group("Influence Arguments")
    infl_grp.add_argument(
        "--cn-mode",
        choices=list(constants.CLI_CN_MODES),
        default="plus-two",
        help="Count both endpoints in the common neighbor count (plus-two) "
        "or shared neighbors only (raw). Default: %(default)s",
    )
    infl_grp.add_argument(
        "--influence-direction",
        choices=list(constants.CLI_DIRECTIONS),
        default="literal",
        help="Weight the step i -> j by the influence of i on j (literal) or "
        "of j on i (received). Default: %(default)s",
    )

    metr_grp = subparser.add_argument_group("Metric Arguments")
    metr_grp.add_argument(
        "--auc-mode",
        choices=constants.AUC_MODES,
        default=constants.AUC_EXACT,
        help="Exact rank statistic or sampled comparisons. "
        "Default: %(default)s",
    )
    metr_grp.add_argument(
        "--auc-samples",
        type=positive_int,
        default=constants.DEFAULT_AUC_SAMPLES,
        help="Number of comparisons for sampled AUC. Default: %(default)d",
    )
    metr_grp.add_argument(
        "--top-l",
        type=top_l_value,
        default=constants.TOP_L_AUTO,
        help="Number of top ranked pairs for precision. 'auto' uses the "
        "number of test edges. Default: %(default)s",
    )
    return prot_grp


def prepare_out_dir(out, overwrite):
    """Create the output directory. An existing non-empty directory is only
    replaced with `overwrite`.
    """
    out_path = Path(out)
    if out_path.exists():
        if overwrite:
            if out_path.is_dir():
                rmtree(out_path)
            else:
                out_path.unlink()
        elif not out_path.is_dir() or any(out_path.iterdir()):
            raise MirwError(
                f"Refusing to overwrite existing output {out_path}. "
                "Use --overwrite."
            )
    out_path.mkdir(parents=True, exist_ok=True)
    return out_path


def bench_config_from_args(args, out_path):
    from mirw.benchmark import BenchConfig
    from mirw.influence import InfluenceConfig
    from mirw.local_indices import LpConfig

    return BenchConfig(
        dataset=args.dataset,
        methods=args.methods,
        trials=args.trials,
        seed=args.seed,
        test_ratio=getattr(args, "ratio", constants.DEFAULT_TEST_RATIO),
        walk_length=args.walk_length,
        sweep_t=args.sweep_t,
        lp=LpConfig(args.lp_alpha),
        rwr_c=args.rwr_c,
        rwr_tol=args.rwr_tol,
        rwr_max_iter=args.rwr_max_iter,
        influence=InfluenceConfig(
            cn_mode=constants.CLI_CN_MODES[args.cn_mode],
            direction=constants.CLI_DIRECTIONS[args.influence_direction],
        ),
        auc_mode=args.auc_mode,
        auc_samples=args.auc_samples,
        top_l=args.top_l,
        out_dir=str(out_path),
        num_workers=args.threads,
        record_timing=args.record_timing,
    )


def init_command_logger(args, out_path):
    log.init_logger(
        args.log_filename
        if args.log_filename
        else out_path / constants.LOG_FILENAME,
        quiet=args.quiet,
    )


##############
# mirw stats #
##############


def register_stats(parser):
    subparser = parser.add_parser(
        "stats",
        description="Topological statistics of a network",
        help="Print |V|, |E|, <K>, <C>, ASPL and diameter of a network.",
        formatter_class=SubcommandHelpFormatter,
    )
    subparser.add_argument(
        "dataset",
        help="Edge list file or registered dataset name.",
    )
    out_grp = subparser.add_argument_group("Output Arguments")
    out_grp.add_argument(
        "--out",
        help="Directory to write stats.csv. Default: stdout only",
    )
    out_grp.add_argument(
        "--quiet",
        action="store_true",
        help="Only log warnings and errors to the console.",
    )
    add_compute_arguments(subparser)
    subparser.set_defaults(func=run_stats)


def run_stats(args):
    import pandas as pd

    from mirw.graph import graph_stats
    from mirw.datasets import load_dataset, reference_stats

    log.init_logger(quiet=args.quiet)
    name, graph = load_dataset(args.dataset)
    stats = graph_stats(graph, num_workers=args.threads)
    sys.stdout.write("dataset nodes edges avg_degree avg_clustering aspl D\n")
    sys.stdout.write(format_stats_line(name, stats) + "\n")
    ref = reference_stats(name)
    if ref is not None:
        sys.stdout.write(format_stats_line("reference", ref) + "\n")
    if args.out is not None:
        out_path = Path(args.out)
        out_path.mkdir(parents=True, exist_ok=True)
        pd.DataFrame(
            [(name,) + stats.as_row()],
            columns=[
                "dataset",
                "nodes",
                "edges",
                "avg_degree",
                "avg_clustering",
                "aspl",
                "diameter",
            ],
        ).to_csv(out_path / constants.STATS_FILENAME, index=False)
    return 0


def format_stats_line(name, stats):
    return (
        f"{name} {stats.node_count} {stats.edge_count} "
        f"{stats.avg_degree:.6f} {stats.avg_clustering:.6f} "
        f"{stats.aspl:.6f} {stats.diameter}"
    )


##############
# mirw bench #
##############


def register_bench(parser):
    subparser = parser.add_parser(
        "bench",
        description="Benchmark link prediction methods with repeated random "
        "holdout of edges",
        help="Run the AUC and precision benchmark on a network.",
        formatter_class=SubcommandHelpFormatter,
    )
    prot_grp = add_benchmark_arguments(subparser)
    prot_grp.add_argument(
        "--ratio",
        type=open_unit_float,
        default=constants.DEFAULT_TEST_RATIO,
        help="Fraction of edges held out for testing. Default: %(default)s",
    )
    add_output_arguments(subparser, "mirw_bench_results")
    add_compute_arguments(subparser)
    subparser.set_defaults(func=run_bench)


def run_bench(args):
    from tabulate import tabulate

    from mirw.benchmark import run_benchmark, write_report

    out_path = prepare_out_dir(args.out, args.overwrite)
    init_command_logger(args, out_path)
    cfg = bench_config_from_args(args, out_path)
    report = run_benchmark(cfg, progress=not args.quiet)
    write_report(report, out_path)
    sys.stdout.write(
        tabulate(
            report.summary_rows(),
            headers=("method", "t", "trials", "AUC", "precision"),
            tablefmt="simple",
        )
        + "\n"
    )
    for failure in report.failures:
        LOGGER.error(
            f"{failure['method']} failed on trial {failure['trial']}: "
            f"{failure['error']}"
        )
    return 0 if report.completed else 1


##############
# mirw sweep #
##############


def register_sweep(parser):
    subparser = parser.add_parser(
        "sweep",
        description="Benchmark link prediction methods over a range of "
        "training set sizes",
        help="Run the benchmark for each training fraction.",
        formatter_class=SubcommandHelpFormatter,
    )
    prot_grp = add_benchmark_arguments(subparser)
    prot_grp.add_argument(
        "--ratios",
        type=open_unit_float_list,
        default=[0.5, 0.6, 0.7, 0.8, 0.9],
        help="Comma separated training fractions. Each benchmark holds out "
        "1 - fraction of the edges. Default: 0.5,0.6,0.7,0.8,0.9",
    )
    add_output_arguments(subparser, "mirw_sweep_results")
    add_compute_arguments(subparser)
    subparser.set_defaults(func=run_sweep)


def run_sweep(args):
    from tabulate import tabulate

    from mirw.benchmark import training_size_sweep, sweep_rows, write_sweep

    if not args.ratios:
        raise MirwError("No training fractions provided")
    out_path = prepare_out_dir(args.out, args.overwrite)
    init_command_logger(args, out_path)
    cfg = bench_config_from_args(args, out_path)
    reports = training_size_sweep(cfg, args.ratios, progress=not args.quiet)
    write_sweep(reports, out_path)
    sys.stdout.write(
        tabulate(
            sweep_rows(reports),
            headers=("train_fraction", "method", "t", "mean_auc", "std_auc"),
            tablefmt="simple",
            floatfmt=".4f",
        )
        + "\n"
    )
    return 0 if all(report.completed for _, report in reports) else 1
