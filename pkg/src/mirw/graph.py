"""Undirected simple graphs over dense node indices, edge-list ingestion and
the topological summary statistics reported for benchmark networks.
"""

from collections import namedtuple
from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from mirw import (
    constants,
    log,
    util,
    MirwError,
    EdgeListParseError,
    InvalidNodeError,
)

LOGGER = log.get_logger()

LoadSummary = namedtuple(
    "LoadSummary",
    ("lines", "comment_lines", "edges", "duplicates", "self_loops"),
)


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected simple graph.

    Args:
        adjacency (tuple): Sorted np.ndarray of neighbor indices for each node
        labels (tuple): External label for each dense node index

    Use `Graph.from_edges` to build a graph from an arbitrary edge list.
    Symmetry, absence of self-loops and duplicate neighbors are established
    there and are not re-checked here.
    """

    adjacency: Tuple[np.ndarray, ...]
    labels: Tuple[str, ...]

    def __post_init__(self):
        if len(self.adjacency) != len(self.labels):
            raise MirwError(
                f"Graph has {len(self.adjacency)} adjacency lists but "
                f"{len(self.labels)} labels"
            )

    @classmethod
    def from_edges(cls, edges, node_count=None, labels=None):
        """Build a canonical graph from (i, j) index pairs.

        Self-loops and duplicate edges (in either orientation) are dropped.

        Args:
            edges: Iterable of 2-item node index pairs or (E, 2) array
            node_count (int): Number of nodes. Default: len(labels) or the
                largest index plus one.
            labels (sequence): External labels. Default: string indices.
        """
        if not isinstance(edges, np.ndarray):
            edges = list(edges)
        pairs = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if node_count is None:
            if labels is not None:
                node_count = len(labels)
            else:
                node_count = int(pairs.max()) + 1 if pairs.size else 0
        if labels is None:
            labels = [str(idx) for idx in range(node_count)]
        if pairs.size and (pairs.min() < 0 or pairs.max() >= node_count):
            raise InvalidNodeError(
                f"Edge endpoint outside of node range [0, {node_count})"
            )
        pairs = pairs[pairs[:, 0] != pairs[:, 1]]
        if pairs.shape[0] == 0:
            adjacency = tuple(
                np.empty(0, dtype=np.int64) for _ in range(node_count)
            )
        else:
            both = np.unique(np.concatenate([pairs, pairs[:, ::-1]]), axis=0)
            bounds = np.searchsorted(both[:, 0], np.arange(node_count + 1))
            adjacency = tuple(
                both[bounds[idx] : bounds[idx + 1], 1].copy()
                for idx in range(node_count)
            )
        for nbrs in adjacency:
            nbrs.setflags(write=False)
        return cls(adjacency, tuple(str(lab) for lab in labels))

    def without_edges(self, pairs):
        """Return a graph over the same nodes and labels with the provided
        (i, j) pairs removed.
        """
        pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        drop = set(map(tuple, np.sort(pairs, axis=1).tolist()))
        keep = [
            (i, j) for i, j in self.edges.tolist() if (i, j) not in drop
        ]
        return Graph.from_edges(keep, self.node_count, self.labels)

    @property
    def node_count(self):
        return len(self.adjacency)

    @cached_property
    def degrees(self):
        degs = np.array([nbrs.size for nbrs in self.adjacency], dtype=np.int64)
        degs.setflags(write=False)
        return degs

    @cached_property
    def edge_count(self):
        return int(self.degrees.sum()) // 2

    @cached_property
    def edges(self):
        """(E, 2) array of edges with i < j sorted lexicographically"""
        if self.edge_count == 0:
            return np.empty((0, 2), dtype=np.int64)
        rows = np.repeat(np.arange(self.node_count), self.degrees)
        cols = np.concatenate(self.adjacency)
        upper = rows < cols
        return np.stack([rows[upper], cols[upper]], axis=1)

    @cached_property
    def adjacency_matrix(self):
        """CSR adjacency matrix (float64, sorted indices)"""
        indptr = np.concatenate([[0], np.cumsum(self.degrees)])
        indices = (
            np.concatenate(self.adjacency)
            if self.edge_count > 0
            else np.empty(0, dtype=np.int64)
        )
        return sparse.csr_matrix(
            (np.ones(indices.size), indices, indptr),
            shape=(self.node_count, self.node_count),
        )

    @cached_property
    def label_index(self):
        return dict((lab, idx) for idx, lab in enumerate(self.labels))

    def check_node(self, node):
        try:
            node = int(node)
        except (TypeError, ValueError):
            raise InvalidNodeError(f"Node index is not an integer: {node!r}")
        if not 0 <= node < self.node_count:
            raise InvalidNodeError(
                f"Node index {node} outside of [0, {self.node_count})"
            )
        return node

    def neighbors(self, node):
        return self.adjacency[self.check_node(node)]

    def degree(self, node):
        return int(self.neighbors(node).size)

    def has_edge(self, i, j):
        nbrs = self.neighbors(i)
        j = self.check_node(j)
        pos = np.searchsorted(nbrs, j)
        return bool(pos < nbrs.size and nbrs[pos] == j)

    def __repr__(self):
        return f"Graph(N={self.node_count}, E={self.edge_count})"


#####################
# Edge list parsing #
#####################


def parse_edge_list(source):
    """Parse a whitespace separated edge list.

    Args:
        source (TextIO): Iterable of text lines. Lines starting with '#' or
            '%' and blank lines are ignored.

    Returns:
        2-tuple containing the Graph and a LoadSummary. Label order of first
        appearance fixes the dense node indices.
    """
    label_index = {}
    pairs = set()
    num_lines = num_comments = num_dups = num_loops = 0
    for line_num, line in enumerate(source, start=1):
        num_lines += 1
        line = line.strip()
        if not line or line.startswith(constants.COMMENT_PREFIXES):
            num_comments += 1
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListParseError(
                f"Line {line_num}: expected 2 node labels, found "
                f"{len(tokens)}: {line!r}",
                line_number=line_num,
            )
        i, j = (label_index.setdefault(tok, len(label_index)) for tok in tokens)
        if i == j:
            num_loops += 1
            continue
        pair = (i, j) if i < j else (j, i)
        if pair in pairs:
            num_dups += 1
            continue
        pairs.add(pair)
    labels = sorted(label_index, key=label_index.get)
    graph = Graph.from_edges(sorted(pairs), len(labels), labels)
    summary = LoadSummary(
        lines=num_lines,
        comment_lines=num_comments,
        edges=graph.edge_count,
        duplicates=num_dups,
        self_loops=num_loops,
    )
    return graph, summary


def load_edge_list(source):
    """Load an undirected Graph from a text stream of edges. Duplicate edges
    and self-loops are dropped and reported in the log.
    """
    graph, summary = parse_edge_list(source)
    LOGGER.info(
        f"Loaded graph with {graph.node_count} nodes and {graph.edge_count} "
        f"edges ({summary.duplicates} duplicate edges and "
        f"{summary.self_loops} self-loops dropped)"
    )
    LOGGER.debug(f"Edge list load summary: {summary}")
    return graph


def read_edge_list_file(path):
    with open(util.resolve_path(str(path)), encoding="utf-8") as fh:
        return load_edge_list(fh)


#########################
# Neighborhood measures #
#########################


def common_neighbors(g, i, j):
    """Set of nodes adjacent to both i and j"""
    return set(
        np.intersect1d(
            g.neighbors(i), g.neighbors(j), assume_unique=True
        ).tolist()
    )


def local_clustering(g, v):
    """Fraction of linked pairs among the neighbors of v (0 below degree 2)"""
    nbrs = g.neighbors(v)
    k = nbrs.size
    if k < 2:
        return 0.0
    # each link among neighbors is seen from both of its endpoints
    links = (
        sum(
            np.intersect1d(g.adjacency[u], nbrs, assume_unique=True).size
            for u in nbrs
        )
        / 2
    )
    return 2.0 * links / (k * (k - 1))


def clustering_coefficients(g):
    """Local clustering coefficient of every node via sparse triangle
    counting.
    """
    adj = g.adjacency_matrix
    # (A^2 * A) row sums count each neighbor link twice
    linked = np.asarray((adj @ adj).multiply(adj).sum(axis=1)).ravel()
    degs = g.degrees.astype(float)
    possible = degs * (degs - 1)
    return np.divide(
        linked, possible, out=np.zeros(g.node_count), where=possible > 0
    )


####################
# Graph statistics #
####################


@dataclass(frozen=True)
class GraphStats:
    node_count: int
    edge_count: int
    avg_degree: float
    avg_clustering: float
    aspl: float
    diameter: int

    def as_row(self):
        return (
            self.node_count,
            self.edge_count,
            self.avg_degree,
            self.avg_clustering,
            self.aspl,
            self.diameter,
        )


def _bfs_block(bounds, adj):
    start, end = bounds
    dists = csgraph.shortest_path(
        adj,
        method="D",
        directed=False,
        unweighted=True,
        indices=np.arange(start, end),
    )
    reachable = np.isfinite(dists) & (dists > 0)
    if not reachable.any():
        return 0.0, 0, 0
    return (
        float(dists[reachable].sum()),
        int(reachable.sum()),
        int(dists[reachable].max()),
    )


def graph_stats(g, num_workers=1):
    """Compute |V|, |E|, average degree, average clustering, average shortest
    path length and diameter.

    Path statistics use reachable pairs only (BFS from every node). Edgeless
    graphs report ASPL = 0 and diameter = 0.
    """
    num_nodes = g.node_count
    if num_nodes == 0:
        return GraphStats(0, 0, 0.0, 0.0, 0.0, 0)
    avg_clust = float(clustering_coefficients(g).mean())
    avg_deg = 2.0 * g.edge_count / num_nodes
    if g.edge_count == 0:
        return GraphStats(num_nodes, 0, avg_deg, avg_clust, 0.0, 0)
    blocks = util.ordered_map(
        _bfs_block,
        util.iter_chunks(num_nodes, constants.SOURCE_CHUNK_SIZE),
        num_workers=num_workers,
        args=(g.adjacency_matrix,),
        name="bfs",
    )
    dist_total = sum(blk[0] for blk in blocks)
    num_pairs = sum(blk[1] for blk in blocks)
    diameter = max(blk[2] for blk in blocks)
    return GraphStats(
        node_count=num_nodes,
        edge_count=g.edge_count,
        avg_degree=avg_deg,
        avg_clustering=avg_clust,
        aspl=dist_total / num_pairs,
        diameter=diameter,
    )
