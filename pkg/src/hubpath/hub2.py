"""Hub-pair distance matrix plus per-vertex core-hub labels with next-hop ports.

One bounded BFS per hub fills its matrix row, records a path witness per
reached hub (an inline vertex sequence for basic pairs, a decomposing hub for
composite ones), and emits a label (hub, distance, port) for every non-hub
vertex it reaches with no other hub strictly between.  Ports are offsets into
the owning vertex's sorted adjacency slice and give the next hop toward the
hub, which keeps path extraction memory-free.
"""

from __future__ import annotations

import struct
import time
from bisect import bisect_left
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, bfs_levels, fnv1a_64, frontier_edges
from .hubs import HubSet

INF = 255
MAX_K = 254

MAGIC = b"HUB2"
VERSION = 1
_FLAG_DIRECTED = 1

_ENTRY_DTYPE = np.dtype([("rank", "<u4"), ("dist", "u1"), ("port", "<u4")])


class IndexFormatError(ValueError):
    """Serialized index is malformed: bad magic, version, checksum, or layout."""


class IndexIntegrityError(RuntimeError):
    """Index contents are inconsistent with each other or with the graph."""


class LabelTable:
    """CSR label storage: per-vertex entries sorted by (dist, hub_rank)."""

    def __init__(self, offsets, hub_rank, dist, port):
        self.offsets = offsets
        self.hub_rank = hub_rank
        self.dist = dist
        self.port = port

    @classmethod
    def from_chunks(cls, n, chunks):
        """Merge per-hub contribution buffers into one deterministic table.

        Sorting by (vertex, dist, hub_rank) makes the result independent of
        the order the per-hub traversals ran in.
        """
        if chunks:
            vertex = np.concatenate([c[0] for c in chunks])
            dist = np.concatenate([c[1] for c in chunks])
            rank = np.concatenate([c[2] for c in chunks])
            port = np.concatenate([c[3] for c in chunks])
        else:
            vertex = dist = rank = port = np.empty(0, np.int64)
        order = np.lexsort((rank, dist, vertex))
        counts = np.bincount(vertex, minlength=n) if vertex.size else np.zeros(n, np.int64)
        offsets = np.zeros(n + 1, np.int64)
        np.cumsum(counts, out=offsets[1:])
        return cls(offsets, rank[order].astype(np.int32),
                   dist[order].astype(np.uint8), port[order].astype(np.int32))

    @property
    def total(self):
        return int(self.hub_rank.size)

    def vertex_slice(self, v):
        lo, hi = self.offsets[v], self.offsets[v + 1]
        return self.hub_rank[lo:hi], self.dist[lo:hi], self.port[lo:hi]

    def counts(self):
        return np.diff(self.offsets)

    def __eq__(self, other):
        if not isinstance(other, LabelTable):
            return NotImplemented
        return (np.array_equal(self.offsets, other.offsets)
                and np.array_equal(self.hub_rank, other.hub_rank)
                and np.array_equal(self.dist, other.dist)
                and np.array_equal(self.port, other.port))


@dataclass
class Hub2Matrix:
    """Hub-pair distances (INF above k) with one path witness per finite entry.

    witness[(i, j)] is ("inline", vertex array) when some shortest path has no
    interior hub, else ("via", w) for a hub rank w splitting the distance.
    """

    dim: int
    dist: np.ndarray
    witness: dict = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, Hub2Matrix):
            return NotImplemented
        if self.dim != other.dim or not np.array_equal(self.dist, other.dist):
            return False
        if self.witness.keys() != other.witness.keys():
            return False
        for key, (tag, payload) in self.witness.items():
            tag2, payload2 = other.witness[key]
            if tag != tag2:
                return False
            if tag == "inline":
                if not np.array_equal(payload, payload2):
                    return False
            elif payload != payload2:
                return False
        return True


@dataclass
class Hub2Index:
    """Everything the two-step query engine needs, bound to a graph fingerprint."""

    k: int
    directed: bool
    n: int
    m: int
    graph_checksum: int
    hubs: HubSet
    matrix: Hub2Matrix
    labels_in: LabelTable
    labels_out: LabelTable
    build_stats: dict = field(default_factory=dict)

    def matches(self, g: Graph) -> bool:
        return (self.n == g.n and self.m == g.m and self.directed == g.directed
                and self.graph_checksum == g.checksum)

    def __eq__(self, other):
        if not isinstance(other, Hub2Index):
            return NotImplemented
        same = (self.k == other.k and self.directed == other.directed
                and self.n == other.n and self.m == other.m
                and self.graph_checksum == other.graph_checksum
                and np.array_equal(self.hubs.ids, other.hubs.ids)
                and self.matrix == other.matrix
                and self.labels_in == other.labels_in)
        if not same:
            return False
        if self.directed:
            return self.labels_out == other.labels_out
        return True


def label_bfs(g: Graph, hubs: HubSet, h: int, k: int, reverse=False):
    """Bounded BFS from hub h: (matrix row, label contribution arrays, witnesses).

    reverse=True walks in-edges (directed graphs), producing outgoing-side
    labels whose ports index the out-slice; the forward walk produces
    incoming-side labels with ports into the in-slice (out-slice when
    undirected).  Parent choice is the smallest-id minimal-level predecessor.
    """
    if not hubs.is_hub[h]:
        raise ValueError(f"vertex {h} is not a hub")
    offsets, targets = g.adjacency(reverse)
    port_lists = g.adj_lists(reverse=not reverse)
    n = g.n
    rank = hubs.rank
    is_hub = hubs.is_hub
    dim = hubs.size

    row = np.full(dim, INF, np.uint8)
    row[rank[h]] = 0
    level = np.full(n, -1, np.int32)
    bflag = np.zeros(n, np.uint8)
    parent = np.full(n, -1, np.int32)
    blocker = np.full(n, -1, np.int32)
    level[h] = 0
    bflag[h] = 1
    frontier = np.array([h], dtype=np.int64)

    lab_vertex, lab_dist, lab_rank, lab_port = [], [], [], []
    witnesses = {}

    for depth in range(k + 1):
        if depth > 0:
            hub_mask = is_hub[frontier]
            for u in frontier[hub_mask]:
                u = int(u)
                r = int(rank[u])
                row[r] = depth
                if bflag[u]:
                    chain = [u]
                    v = u
                    while v != h:
                        v = int(parent[v])
                        chain.append(v)
                    chain.reverse()
                    witnesses[r] = ("inline", np.array(chain, dtype=np.uint32))
                    bflag[u] = 0
                else:
                    witnesses[r] = ("via", int(rank[blocker[u]]))
                blocker[u] = u
            labeled = frontier[~hub_mask & (bflag[frontier] == 1)]
            if labeled.size:
                ports = np.empty(labeled.size, np.int32)
                for i, v in enumerate(labeled):
                    ports[i] = bisect_left(port_lists[v], int(parent[v]))
                lab_vertex.append(labeled)
                lab_dist.append(np.full(labeled.size, depth, np.int64))
                lab_rank.append(np.full(labeled.size, rank[h], np.int64))
                lab_port.append(ports.astype(np.int64))
        if depth == k:
            break
        srcs, dsts = frontier_edges(offsets, targets, frontier)
        if dsts.size == 0:
            break
        fresh = level[dsts] < 0
        srcs, dsts = srcs[fresh], dsts[fresh]
        if dsts.size == 0:
            break
        src_b = bflag[srcs]
        # blocked predecessors sort first so one pass yields the AND of the
        # flags, a deterministic parent, and the propagated blocking hub
        order = np.lexsort((srcs, src_b, dsts))
        ds, ss, bs = dsts[order], srcs[order], src_b[order]
        first = np.ones(ds.size, bool)
        first[1:] = ds[1:] != ds[:-1]
        new = ds[first]
        chosen_src = ss[first]
        chosen_b = bs[first]
        blocked = chosen_b == 0
        bflag[new] = chosen_b
        blocker[new[blocked]] = blocker[chosen_src[blocked]]
        # labeled vertices have all-unblocked predecessors, so the chosen
        # predecessor is their smallest-id one; parents of blocked vertices
        # are never walked
        parent[new] = chosen_src
        level[new] = depth + 1
        frontier = new
    contribution = (lab_vertex, lab_dist, lab_rank, lab_port)
    return row, contribution, witnesses


def build(g: Graph, hubs: HubSet, k: int) -> Hub2Index:
    """Run one (two when directed) label traversal per hub and merge the output.

    The merge is a global sort by (vertex, level, hub rank), so the result does
    not depend on traversal scheduling.
    """
    if hubs.size == 0:
        raise ValueError("cannot build an index over an empty hub set")
    if not 1 <= k <= MAX_K:
        raise ValueError(f"k must be in [1, {MAX_K}]")
    t0 = time.monotonic()
    dim = hubs.size
    dist = np.full((dim, dim), INF, np.uint8)
    witness = {}
    chunks_in, chunks_out = [], []
    for i, h in enumerate(hubs.ids):
        row, (lv, ld, lr, lp), wit = label_bfs(g, hubs, int(h), k)
        dist[i] = row
        for r, w in wit.items():
            witness[(i, r)] = w
        chunks_in.extend(zip(lv, ld, lr, lp))
        if g.directed:
            _, (lv, ld, lr, lp), _ = label_bfs(g, hubs, int(h), k, reverse=True)
            chunks_out.extend(zip(lv, ld, lr, lp))
    labels_in = LabelTable.from_chunks(g.n, chunks_in)
    labels_out = LabelTable.from_chunks(g.n, chunks_out) if g.directed else labels_in
    non_hubs = max(1, g.n - dim)
    entries = labels_in.total + (labels_out.total if g.directed else 0)
    stats = {
        "avg_labels_per_vertex": entries / non_hubs,
        "build_seconds": time.monotonic() - t0,
    }
    return Hub2Index(k=k, directed=g.directed, n=g.n, m=g.m,
                     graph_checksum=g.checksum, hubs=hubs,
                     matrix=Hub2Matrix(dim, dist, witness),
                     labels_in=labels_in, labels_out=labels_out,
                     build_stats=stats)


def core_hubs_oracle(g: Graph, hubs: HubSet, k: int, v: int, side="out"):
    """The label definition applied literally to exact BFS distances.

    side="out" keeps hubs reachable from v with no other hub strictly between
    (d(v,h) = d(v,h') + d(h',h) for no h'); side="in" is the mirrored test in
    edge direction.  Hubs own only the implicit (self, 0) entry.  Small graphs
    only: one bounded BFS per hub plus one for v.
    """
    if side not in ("out", "in"):
        raise ValueError("side must be 'out' or 'in'")
    if hubs.is_hub[v]:
        return {(int(v), 0)}
    n = g.n
    # side="out": BFS from v along out-edges gives d(v, .); the blocking test
    # needs d(h2, h).  side="in": everything runs on reversed edges, so a BFS
    # from v gives d(., v) and a BFS from h2 gives d(., h2) == d(h, h2) read
    # at h, which is exactly the mirrored strictly-between test.
    offsets, targets = g.adjacency(reverse=(side == "in"))
    lv = bfs_levels(offsets, targets, v, k, n)
    hub_ids = hubs.ids.astype(np.int64)
    dv = lv[hub_ids]
    candidates = [(int(hub_ids[i]), int(dv[i]))
                  for i in range(hub_ids.size) if 0 < dv[i] <= k]
    result = set()
    if not candidates:
        return result
    hub_lv = {h: bfs_levels(offsets, targets, h, k, n) for h, _ in candidates}
    for h, d in candidates:
        blocked = False
        for h2, d2 in candidates:
            if h2 == h:
                continue
            between = int(hub_lv[h2][h])
            if between >= 0 and d2 + between == d:
                blocked = True
                break
        if not blocked:
            result.add((h, d))
    return result


def index_stats(idx: Hub2Index) -> dict:
    """Aggregate sizes: label counts per non-hub vertex, matrix fill, bytes."""
    counts = idx.labels_in.counts()
    if idx.directed:
        counts = counts + idx.labels_out.counts()
    non_hub = ~idx.hubs.is_hub
    per_vertex = counts[non_hub]
    denom = max(1, int(non_hub.sum()))
    finite = int((idx.matrix.dist != INF).sum())
    return {
        "avg_label_count": float(per_vertex.sum() / denom),
        "max_label_count": int(per_vertex.max()) if per_vertex.size else 0,
        "matrix_finite_fraction": finite / (idx.matrix.dim ** 2),
        "bytes": len(to_bytes(idx)),
    }


def to_bytes(idx: Hub2Index) -> bytes:
    """Serialize to the binary index format (little-endian, checksummed)."""
    buf = bytearray()
    buf += MAGIC
    flags = _FLAG_DIRECTED if idx.directed else 0
    buf += struct.pack("<HHB3x", VERSION, flags, idx.k)
    buf += struct.pack("<QQQ", idx.n, idx.m, idx.graph_checksum)
    buf += struct.pack("<I", idx.hubs.size)
    buf += idx.hubs.ids.astype("<u4").tobytes()
    buf += idx.matrix.dist.tobytes(order="C")
    dim = idx.matrix.dim
    dist = idx.matrix.dist
    for i in range(dim):
        for j in range(dim):
            if i == j or dist[i, j] == INF:
                continue
            tag, payload = idx.matrix.witness[(i, j)]
            if tag == "inline":
                buf += struct.pack("<BB", 0, len(payload) - 1)
                buf += payload.astype("<u4").tobytes()
            else:
                buf += struct.pack("<BI", 1, payload)
    _write_label_table(buf, idx.labels_in, idx.n)
    if idx.directed:
        _write_label_table(buf, idx.labels_out, idx.n)
    buf += struct.pack("<Q", fnv1a_64(bytes(buf)))
    return bytes(buf)


def _write_label_table(buf, table, n):
    for v in range(n):
        lo, hi = int(table.offsets[v]), int(table.offsets[v + 1])
        count = hi - lo
        if count > 0xFFFF:
            raise IndexFormatError(f"vertex {v} has {count} labels; format caps at 65535")
        buf += struct.pack("<H", count)
        if count:
            entries = np.empty(count, _ENTRY_DTYPE)
            entries["rank"] = table.hub_rank[lo:hi]
            entries["dist"] = table.dist[lo:hi]
            entries["port"] = table.port[lo:hi]
            buf += entries.tobytes()


def serialize(idx: Hub2Index, sink) -> None:
    """Write the index to a binary file-like sink or path."""
    data = to_bytes(idx)
    if hasattr(sink, "write"):
        sink.write(data)
    else:
        with open(sink, "wb") as fh:
            fh.write(data)


def from_bytes(data: bytes) -> Hub2Index:
    """Parse and validate a serialized index; any corruption raises."""
    if len(data) < 8:
        raise IndexFormatError("truncated file: too short for checksum")
    stored = struct.unpack("<Q", data[-8:])[0]
    if fnv1a_64(data[:-8]) != stored:
        raise IndexFormatError("checksum mismatch: file is corrupted or truncated")
    r = _Reader(data[:-8])
    if r.take(4) != MAGIC:
        raise IndexFormatError("bad magic")
    version, flags, k = struct.unpack("<HHB3x", r.take(8))
    if version != VERSION:
        raise IndexFormatError(f"unsupported version {version}")
    if flags & ~_FLAG_DIRECTED:
        raise IndexFormatError(f"unknown flag bits 0x{flags:x}")
    directed = bool(flags & _FLAG_DIRECTED)
    if not 1 <= k <= MAX_K:
        raise IndexFormatError(f"k={k} out of range")
    n, m, checksum = struct.unpack("<QQQ", r.take(24))
    dim = struct.unpack("<I", r.take(4))[0]
    if dim == 0 or dim > n:
        raise IndexFormatError(f"hub count {dim} out of range for n={n}")
    ids = np.frombuffer(r.take(4 * dim), dtype="<u4").astype(np.uint32)
    if np.any(ids[1:] <= ids[:-1]) or (dim and ids[-1] >= n):
        raise IndexFormatError("hub ids must be strictly ascending and < n")
    dist = np.frombuffer(r.take(dim * dim), dtype=np.uint8).reshape(dim, dim).copy()
    if np.any(np.diag(dist) != 0):
        raise IndexFormatError("matrix diagonal must be zero")
    if np.any((dist > k) & (dist != INF)):
        raise IndexFormatError("matrix distance exceeds k")
    witness = {}
    for i in range(dim):
        for j in range(dim):
            if i == j or dist[i, j] == INF:
                continue
            tag = r.take(1)[0]
            if tag == 0:
                length = r.take(1)[0]
                if length != dist[i, j]:
                    raise IndexFormatError(f"inline witness length {length} != distance {dist[i, j]}")
                verts = np.frombuffer(r.take(4 * (length + 1)), dtype="<u4").astype(np.uint32)
                if verts[0] != ids[i] or verts[-1] != ids[j] or np.any(verts >= n):
                    raise IndexFormatError("inline witness endpoints or bounds are wrong")
                witness[(i, j)] = ("inline", verts)
            elif tag == 1:
                w = struct.unpack("<I", r.take(4))[0]
                if w >= dim or w in (i, j):
                    raise IndexFormatError(f"via witness rank {w} invalid for pair ({i},{j})")
                witness[(i, j)] = ("via", w)
            else:
                raise IndexFormatError(f"unknown witness tag {tag}")
    labels_in = _read_label_table(r, n, dim, k)
    labels_out = _read_label_table(r, n, dim, k) if directed else labels_in
    if r.remaining():
        raise IndexFormatError(f"{r.remaining()} unexpected trailing bytes")
    hubs = HubSet(n, ids, dim)
    return Hub2Index(k=int(k), directed=directed, n=int(n), m=int(m),
                     graph_checksum=int(checksum), hubs=hubs,
                     matrix=Hub2Matrix(dim, dist, witness),
                     labels_in=labels_in, labels_out=labels_out)


def _read_label_table(r, n, dim, k):
    chunks_v, chunks_e = [], []
    for v in range(n):
        count = struct.unpack("<H", r.take(2))[0]
        if count:
            entries = np.frombuffer(r.take(9 * count), dtype=_ENTRY_DTYPE)
            chunks_v.append(np.full(count, v, np.int64))
            chunks_e.append(entries)
    if chunks_e:
        vertex = np.concatenate(chunks_v)
        entries = np.concatenate(chunks_e)
        rank = entries["rank"].astype(np.int64)
        dist = entries["dist"].astype(np.int64)
        port = entries["port"].astype(np.int64)
    else:
        vertex = rank = dist = port = np.empty(0, np.int64)
    if rank.size:
        if rank.max() >= dim:
            raise IndexFormatError("label hub rank out of range")
        if dist.min() < 1 or dist.max() > k:
            raise IndexFormatError("label distance out of range")
        # entries must already be sorted by (vertex, dist, rank): byte-stability
        key_sorted = np.lexsort((rank, dist, vertex))
        if np.any(key_sorted != np.arange(rank.size)):
            raise IndexFormatError("label entries not sorted by (level, hub rank)")
    counts = np.bincount(vertex, minlength=n) if vertex.size else np.zeros(n, np.int64)
    offsets = np.zeros(n + 1, np.int64)
    np.cumsum(counts, out=offsets[1:])
    return LabelTable(offsets, rank.astype(np.int32), dist.astype(np.uint8),
                      port.astype(np.int32))


def deserialize(source) -> Hub2Index:
    """Read an index from bytes, a binary file-like object, or a path."""
    if isinstance(source, bytes):
        return from_bytes(source)
    if hasattr(source, "read"):
        return from_bytes(source.read())
    with open(source, "rb") as fh:
        return from_bytes(fh.read())


class _Reader:
    def __init__(self, data):
        self.data = data
        self.pos = 0

    def take(self, count):
        if self.pos + count > len(self.data):
            raise IndexFormatError("truncated file")
        out = self.data[self.pos:self.pos + count]
        self.pos += count
        return out

    def remaining(self):
        return len(self.data) - self.pos
