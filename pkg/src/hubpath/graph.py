"""Unweighted graphs in compressed adjacency form, plus BFS utilities.

Graphs are immutable after construction.  Vertex ids are dense 0-based
integers; each vertex's neighbor slice is sorted ascending; self-loops are
dropped and duplicate edges collapsed at load time.  Directed graphs carry a
reverse adjacency next to the forward one.  The sorted slices are what make
next-hop port offsets well defined and serialization deterministic.
"""

from __future__ import annotations

import numpy as np

MAX_VERTEX_ID = 2**32 - 2

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_U64_MASK = 0xFFFFFFFFFFFFFFFF

_EMPTY_I64 = np.empty(0, np.int64)
_EMPTY_U32 = np.empty(0, np.uint32)


class EdgeListParseError(ValueError):
    """Malformed edge-list input (bad token, no edges, oversized id)."""


def fnv1a_64(data, state: int = _FNV_OFFSET) -> int:
    """64-bit FNV-1a hash of a bytes-like object, optionally chained."""
    h = state
    for b in bytes(data):
        h = ((h ^ b) * _FNV_PRIME) & _U64_MASK
    return h


class Graph:
    """Immutable unweighted graph in CSR form (forward and, if directed, reverse).

    Attributes
    ----------
    n : int            vertex count
    m : int            directed-edge count (undirected edges count twice)
    directed : bool
    out_offsets : int64 array of n+1 cumulative indices
    out_targets : uint32 array of m neighbor ids, ascending per slice
    in_offsets / in_targets : present iff directed (same sorting rule)
    """

    def __init__(self, n, directed, out_offsets, out_targets,
                 in_offsets=None, in_targets=None):
        self.n = int(n)
        self.m = int(out_targets.shape[0])
        self.directed = bool(directed)
        self.out_offsets = out_offsets
        self.out_targets = out_targets
        self.in_offsets = in_offsets
        self.in_targets = in_targets
        if self.directed and (in_offsets is None or in_targets is None):
            raise ValueError("directed graph requires reverse adjacency")
        self._checksum = None
        self._out_lists = None
        self._in_lists = None

    @classmethod
    def from_edges(cls, n, sources, targets, directed=False):
        """Build a graph from parallel source/target id arrays.

        Undirected mode inserts both orientations; duplicates collapse and
        self-loops are dropped in either mode.
        """
        n = int(n)
        src = np.asarray(sources, dtype=np.uint64)
        dst = np.asarray(targets, dtype=np.uint64)
        keep = src != dst
        src, dst = src[keep], dst[keep]
        if not directed:
            src, dst = np.concatenate([src, dst]), np.concatenate([dst, src])
        if src.size:
            code = np.unique(src * np.uint64(n) + dst)
            src = (code // np.uint64(n)).astype(np.int64)
            dst = (code % np.uint64(n)).astype(np.int64)
        else:
            src = dst = np.empty(0, np.int64)
        out_offsets = _offsets_from_sorted(src, n)
        out_targets = dst.astype(np.uint32)
        if not directed:
            return cls(n, False, out_offsets, out_targets)
        rev = np.sort(dst.astype(np.uint64) * np.uint64(n) + src.astype(np.uint64))
        rsrc = (rev // np.uint64(n)).astype(np.int64)
        rdst = (rev % np.uint64(n)).astype(np.int64)
        return cls(n, True, out_offsets, out_targets,
                   _offsets_from_sorted(rsrc, n), rdst.astype(np.uint32))

    def adjacency(self, reverse=False):
        """(offsets, targets) pair; reverse selects in-edges on directed graphs."""
        if reverse and self.directed:
            return self.in_offsets, self.in_targets
        return self.out_offsets, self.out_targets

    def neighbors(self, v, reverse=False):
        offsets, targets = self.adjacency(reverse)
        return targets[offsets[v]:offsets[v + 1]]

    def out_degrees(self):
        return np.diff(self.out_offsets)

    def total_degrees(self):
        """Per-vertex degree; out+in for directed graphs."""
        deg = np.diff(self.out_offsets)
        if self.directed:
            deg = deg + np.diff(self.in_offsets)
        return deg

    def adj_lists(self, reverse=False):
        """Cached per-vertex neighbor lists (python ints, ascending)."""
        if reverse and self.directed:
            if self._in_lists is None:
                self._in_lists = _split_lists(self.in_offsets, self.in_targets, self.n)
            return self._in_lists
        if self._out_lists is None:
            self._out_lists = _split_lists(self.out_offsets, self.out_targets, self.n)
        return self._out_lists

    def has_edge(self, u, v):
        offsets, targets = self.out_offsets, self.out_targets
        lo, hi = offsets[u], offsets[u + 1]
        pos = lo + np.searchsorted(targets[lo:hi], v)
        return pos < hi and targets[pos] == v

    @property
    def checksum(self) -> int:
        """FNV-1a over the forward edge arrays; the graph fingerprint."""
        if self._checksum is None:
            h = fnv1a_64(self.out_offsets.astype("<i8").tobytes())
            self._checksum = fnv1a_64(self.out_targets.astype("<u4").tobytes(), h)
        return self._checksum

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n and self.directed == other.directed
                and np.array_equal(self.out_offsets, other.out_offsets)
                and np.array_equal(self.out_targets, other.out_targets))

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"Graph(n={self.n}, m={self.m}, {kind})"


def _offsets_from_sorted(sorted_sources, n):
    counts = np.bincount(sorted_sources, minlength=n) if sorted_sources.size else np.zeros(n, np.int64)
    offsets = np.zeros(n + 1, np.int64)
    np.cumsum(counts, out=offsets[1:])
    return offsets


def _split_lists(offsets, targets, n):
    lst = targets.tolist()
    offs = offsets.tolist()
    return [lst[offs[i]:offs[i + 1]] for i in range(n)]


def load_edge_list(source, directed=False) -> Graph:
    """Parse SNAP-style edge-list text into a Graph.

    Lines beginning with '#' and blank lines are ignored; other lines need at
    least two whitespace-separated integer tokens (extra tokens are ignored).
    Vertices are 0..max_id; gaps become isolated vertices.
    """
    text = _read_text(source)
    srcs, dsts = [], []
    max_id = -1
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) < 2:
            raise EdgeListParseError(f"line {line_no}: expected two integer tokens, got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(f"line {line_no}: malformed integer token in {line!r}") from None
        if u < 0 or v < 0:
            raise EdgeListParseError(f"line {line_no}: negative vertex id in {line!r}")
        if u > MAX_VERTEX_ID or v > MAX_VERTEX_ID:
            raise EdgeListParseError(f"line {line_no}: vertex id exceeds {MAX_VERTEX_ID}")
        srcs.append(u)
        dsts.append(v)
        if u > max_id:
            max_id = u
        if v > max_id:
            max_id = v
    g = Graph.from_edges(max_id + 1, srcs, dsts, directed) if srcs else None
    if g is None or g.m == 0:
        raise EdgeListParseError("empty edge set")
    return g


def _read_text(source):
    if isinstance(source, bytes):
        return source.decode("ascii")
    if isinstance(source, str):
        return source
    data = source.read()
    if isinstance(data, bytes):
        return data.decode("ascii")
    return data


def frontier_edges(offsets, targets, frontier):
    """All (src, dst) pairs leaving the frontier, concatenated in slice order."""
    starts = offsets[frontier]
    counts = offsets[frontier + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return _EMPTY_I64, _EMPTY_I64
    shift = np.concatenate(([0], np.cumsum(counts)[:-1]))
    pos = np.arange(total) + np.repeat(starts - shift, counts)
    return np.repeat(frontier, counts), targets[pos].astype(np.int64)


def bfs_levels(offsets, targets, source, max_depth, n, parents=False):
    """Level-synchronous BFS bounded at max_depth.

    Returns the int32 level array (-1 unreached).  With parents=True also
    returns the parent array where each reached vertex records its smallest-id
    predecessor on the previous level (deterministic given sorted slices).
    """
    level = np.full(n, -1, np.int32)
    level[source] = 0
    parent = np.full(n, -1, np.int32) if parents else None
    frontier = np.array([source], dtype=np.int64)
    for depth in range(max_depth):
        srcs, dsts = frontier_edges(offsets, targets, frontier)
        if dsts.size == 0:
            break
        fresh = level[dsts] < 0
        srcs, dsts = srcs[fresh], dsts[fresh]
        if dsts.size == 0:
            break
        order = np.lexsort((srcs, dsts))
        ds, ss = dsts[order], srcs[order]
        first = np.ones(ds.size, bool)
        first[1:] = ds[1:] != ds[:-1]
        new = ds[first]
        level[new] = depth + 1
        if parents:
            parent[new] = ss[first]
        frontier = new
    if parents:
        return level, parent
    return level


def bounded_bfs(g: Graph, source, max_depth, reverse=False):
    """Exact BFS distances from source (or to source when reverse) within max_depth.

    Returns a dict vertex -> level.  On undirected graphs reverse is a no-op.
    """
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} out of range [0, {g.n})")
    if max_depth < 0:
        raise ValueError("max_depth must be nonnegative")
    offsets, targets = g.adjacency(reverse)
    level = bfs_levels(offsets, targets, source, max_depth, g.n)
    reached = np.flatnonzero(level >= 0)
    return {int(v): int(level[v]) for v in reached}


def validate_path(g: Graph, path) -> bool:
    """True iff consecutive vertices are joined by an edge (direction respected)."""
    if path is None or len(path) == 0:
        return False
    if any(v < 0 or v >= g.n for v in path):
        return False
    offsets, targets = g.out_offsets, g.out_targets
    for u, v in zip(path, path[1:]):
        lo, hi = offsets[u], offsets[u + 1]
        pos = lo + np.searchsorted(targets[lo:hi], v)
        if pos >= hi or targets[pos] != v:
            return False
    return True


def induced_subgraph(g: Graph, member_mask) -> Graph:
    """Subgraph induced by the masked vertex set, keeping original vertex ids."""
    row = np.repeat(np.arange(g.n, dtype=np.int64), np.diff(g.out_offsets))
    keep = member_mask[row] & member_mask[g.out_targets]
    return Graph.from_edges(g.n, row[keep], g.out_targets[keep].astype(np.int64),
                            directed=g.directed)
