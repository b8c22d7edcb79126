import os
import sys
import argparse

from mirw import __version__, log, MirwError
from mirw.parsers import (
    register_stats,
    register_bench,
    register_sweep,
    SubcommandHelpFormatter,
)

LOGGER = log.get_logger()

_DO_PROFILE = False
# None if environment var not set
_PROF_FN = os.getenv("MIRW_PROFILE_FILE")
if _PROF_FN:
    _DO_PROFILE = True


def run():
    """The main routine."""
    # prepare first level `mirw -h` help, including description.
    desc = (
        "********** MIRW *********\n\nLink prediction with mutual influence "
        "random walks and benchmark of similarity indices.\n\n"
    )
    parser = argparse.ArgumentParser(
        prog="mirw",
        description=desc,
        formatter_class=SubcommandHelpFormatter,
    )
    parser.add_argument(
        "-v",
        "--version",
        action="version",
        version="MIRW version: {}".format(__version__),
        help="Show MIRW version and exit.",
    )
    parser.set_defaults(func=lambda x: parser.print_help())

    subparsers = parser.add_subparsers(title="sub-commands")
    register_stats(subparsers)
    register_bench(subparsers)
    register_sweep(subparsers)

    args = parser.parse_args()
    cmd_func = args.func
    if _DO_PROFILE:
        LOGGER.warning(f"Profiling mirw. Saving profile data to {_PROF_FN}")
        _func_wrapper = cmd_func

        def cmd_func(args):
            import cProfile

            prof = cProfile.Profile()
            retval = prof.runcall(_func_wrapper, args)
            prof.dump_stats(_PROF_FN)
            return retval

    try:
        retval = cmd_func(args)
    except MirwError as e:
        LOGGER.error(str(e))
        sys.exit(2)
    sys.exit(retval or 0)


if __name__ == "__main__":
    run()
