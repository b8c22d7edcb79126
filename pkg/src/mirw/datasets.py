"""Registry of benchmark networks.

Registered names resolve first against the directory named by the
LINKPRED_DATA_DIR environment variable and then against the edge lists
bundled with the package. Anything else is treated as a file path.
"""

import os
from pathlib import Path

from mirw import constants, log, DatasetNotFoundError
from mirw.graph import GraphStats, read_edge_list_file

LOGGER = log.get_logger()

BUNDLED_DATA_DIR = Path(__file__).absolute().parent / "data"
REGISTERED_DATASETS = constants.REGISTERED_DATASETS

# Published topological statistics of the standard benchmark networks:
# |V|, |E|, <K>, <C>, ASPL, D
REFERENCE_STATS = {
    "karate": GraphStats(34, 78, 4.588, 0.588, 2.408, 5),
    "football": GraphStats(115, 613, 10.661, 0.403, 2.508, 4),
    "dolphins": GraphStats(62, 159, 5.129, 0.303, 3.357, 8),
    "celegans": GraphStats(297, 2148, 14.465, 0.308, 2.455, 5),
    "physicians": GraphStats(241, 1098, 9.112, 0.251, 2.490, 5),
    "food": GraphStats(128, 2075, 32.422, 0.335, 1.776, 3),
    "smagri": GraphStats(1024, 4916, 9.602, 0.349, 2.981, 6),
    "yeast": GraphStats(2375, 11693, 9.847, 0.388, 5.09, 15),
    "netscience": GraphStats(1461, 2742, 3.750, 0.878, 5.82, 17),
    "kingjames": GraphStats(1733, 9131, 18.500, 0.163, 3.38, 8),
    "ca-grqc": GraphStats(5242, 14496, 6.0, 0.529, 7.60, 17),
}


def data_dirs():
    """Directories searched for registered dataset names, in order"""
    dirs = []
    env_dir = os.getenv(constants.DATA_DIR_ENV)
    if env_dir:
        dirs.append(Path(env_dir))
    dirs.append(BUNDLED_DATA_DIR)
    return dirs


def dataset_name(dataset):
    """Short display name: the registry key or the file stem"""
    path = Path(str(dataset))
    return path.stem if path.suffix else path.name


def resolve_dataset(dataset):
    """Resolve a dataset path or registry name to an existing file path.

    Args:
        dataset (str): Path to an edge list file or a dataset name. Names are
            matched case-insensitively against `<name>.edges` in each of
            `data_dirs()`.

    Raises:
        DatasetNotFoundError: when nothing matches
    """
    path = Path(str(dataset)).expanduser()
    if path.is_file():
        return path
    name = str(dataset).lower()
    searched = []
    for data_dir in data_dirs():
        for cand in (
            data_dir / f"{name}{constants.EDGE_LIST_SUFFIX}",
            data_dir / name,
        ):
            searched.append(str(cand))
            if cand.is_file():
                LOGGER.debug(f"Resolved dataset {dataset} to {cand}")
                return cand
    raise DatasetNotFoundError(
        f"Dataset not found: {dataset}. Not an existing file and no edge "
        f"list found at: {', '.join(searched)}. Set "
        f"{constants.DATA_DIR_ENV} to a directory containing "
        f"<name>{constants.EDGE_LIST_SUFFIX} files."
    )


def load_dataset(dataset):
    """Load a dataset by path or registry name.

    Returns:
        2-tuple of display name and Graph
    """
    path = resolve_dataset(dataset)
    LOGGER.info(f"Loading dataset {dataset} from {path}")
    return dataset_name(dataset), read_edge_list_file(path)


def reference_stats(dataset):
    """Published statistics for a registered network name or None"""
    return REFERENCE_STATS.get(dataset_name(dataset).lower())
