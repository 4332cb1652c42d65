"""Query engines answering bounded shortest-path queries with certified paths.

Four engines share one contract: return the exact distance and one shortest
path when the distance is within k, otherwise report nothing.

- bfs_query: plain bounded BFS, the ground-truth oracle.
- bibfs_query: bidirectional BFS, smaller frontier first, level-sum cutoff.
- hn_query: bidirectional BFS in which hubs expand only their neighbors
  inside the discovered hub network.
- hl_query: two steps -- a levelwise label join against the hub matrix for an
  upper bound, then a bidirectional BFS that never touches a hub.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, frontier_edges, validate_path
from .hub2 import INF, Hub2Index, IndexIntegrityError
from .hubs import HubSet
from .network import HubNetwork

_UNSET = 1 << 30


@dataclass
class SearchStats:
    """Work counters: vertices expanded/enqueued and label-pair comparisons."""

    engine: str
    visited: int = 0
    enqueued: int = 0
    join_ops: int = 0
    expanded: np.ndarray = None


@dataclass
class Estimate:
    """Label-join upper bound on the distance, with the hub pair attaining it."""

    value: int = None
    argpair: tuple = None
    join_ops: int = 0


@dataclass
class QueryResult:
    distance: int = None
    path: list = None
    stats: SearchStats = field(default_factory=lambda: SearchStats("none"))

    @property
    def found(self):
        return self.distance is not None


def _check_pair(g, s, t):
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise ValueError(f"query pair ({s}, {t}) out of range [0, {g.n})")


def bfs_query(g: Graph, s: int, t: int, k: int) -> QueryResult:
    """Bounded BFS from s; the reference engine the others are checked against."""
    _check_pair(g, s, t)
    stats = SearchStats("bfs")
    if s == t:
        return QueryResult(0, [s], stats)
    offsets, targets = g.adjacency()
    level = np.full(g.n, -1, np.int32)
    parent = np.full(g.n, -1, np.int32)
    level[s] = 0
    stats.enqueued = 1
    frontier = np.array([s], dtype=np.int64)
    dist = None
    for depth in range(k):
        stats.visited += int(frontier.size)
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
        parent[new] = ss[first]
        stats.enqueued += int(new.size)
        if level[t] >= 0:
            dist = depth + 1
            break
        frontier = new
    if dist is None:
        return QueryResult(None, None, stats)
    path = [t]
    v = t
    while v != s:
        v = int(parent[v])
        path.append(v)
    path.reverse()
    return QueryResult(dist, path, stats)


class _Side:
    """One direction of a bidirectional search."""

    __slots__ = ("level", "parent", "frontier", "radius", "offsets", "targets",
                 "exhausted", "open_counts")

    def __init__(self, g, start, reverse, cap):
        self.level = np.full(g.n, -1, np.int32)
        self.parent = np.full(g.n, -1, np.int32)
        self.level[start] = 0
        self.frontier = np.array([start], dtype=np.int64)
        self.radius = 0
        self.offsets, self.targets = g.adjacency(reverse)
        self.exhausted = False
        # labeled-but-not-met vertices per level; the minimum open level
        # bounds future meeting sums when levels are not true distances
        self.open_counts = np.zeros(cap + 2, np.int64)
        self.open_counts[0] = 1

    def min_open(self):
        nz = np.flatnonzero(self.open_counts)
        return int(nz[0]) if nz.size else _UNSET


def _expand(side, stats, dst_mask=None, hub_restrict=None, collect=False):
    """Advance one side by one level; returns newly labeled vertices.

    dst_mask, when given, suppresses labeling of masked vertices entirely.
    hub_restrict = (is_hub, member) limits expansion of hub vertices to
    network members.
    """
    frontier = side.frontier
    if frontier.size == 0:
        side.exhausted = True
        return frontier
    stats.visited += int(frontier.size)
    if collect:
        stats.expanded = frontier if stats.expanded is None else np.concatenate(
            [stats.expanded, frontier])
    if hub_restrict is None:
        srcs, dsts = frontier_edges(side.offsets, side.targets, frontier)
    else:
        is_hub, member = hub_restrict
        hub_part = frontier[is_hub[frontier]]
        rest = frontier[~is_hub[frontier]]
        s1, d1 = frontier_edges(side.offsets, side.targets, hub_part)
        if d1.size:
            keep = member[d1]
            s1, d1 = s1[keep], d1[keep]
        s2, d2 = frontier_edges(side.offsets, side.targets, rest)
        srcs = np.concatenate([s1, s2])
        dsts = np.concatenate([d1, d2])
    if dsts.size:
        fresh = side.level[dsts] < 0
        if dst_mask is not None:
            fresh &= ~dst_mask[dsts]
        srcs, dsts = srcs[fresh], dsts[fresh]
    if dsts.size == 0:
        side.frontier = dsts
        side.exhausted = True
        return dsts
    order = np.lexsort((srcs, dsts))
    ds, ss = dsts[order], srcs[order]
    first = np.ones(ds.size, bool)
    first[1:] = ds[1:] != ds[:-1]
    new = ds[first]
    side.level[new] = side.radius + 1
    side.parent[new] = ss[first]
    side.radius += 1
    side.frontier = new
    stats.enqueued += int(new.size)
    return new


def _register_meets(new, side, other, best, meet):
    """Fold newly double-labeled vertices into the best meeting candidate.

    Fresh labels that meet the other direction leave both open sets; the rest
    join this side's open set at their level.
    """
    if new.size == 0:
        return best, meet
    other_lv = other.level[new]
    seen = other_lv >= 0
    radius = side.radius
    side.open_counts[radius] += int(new.size - seen.sum())
    if not np.any(seen):
        return best, meet
    cand = new[seen]
    hit = other_lv[seen]
    np.subtract.at(other.open_counts, hit, 1)
    sums = radius + hit
    pos = int(np.argmin(sums))
    if int(sums[pos]) < best:
        return int(sums[pos]), int(cand[pos])
    return best, meet


def _stitch(fwd, bwd, meet, s, t):
    left = [meet]
    v = meet
    while v != s:
        v = int(fwd.parent[v])
        left.append(v)
    left.reverse()
    v = meet
    while v != t:
        v = int(bwd.parent[v])
        left.append(v)
    return left


def _should_stop(fwd, bwd, best, cap, conservative):
    target = min(best, cap)
    if fwd.exhausted and bwd.exhausted:
        return True
    if not conservative:
        # levels are true distances here, so every path of length up to
        # radius_f + radius_b has already produced a meeting vertex
        return fwd.radius + bwd.radius >= target
    # levels may exceed true distances (restricted expansion): bound each
    # class of future meets instead.  A vertex labeled on one side only can
    # still meet at (its level) + (other radius + 1); an unlabeled vertex at
    # (radius_f + 1) + (radius_b + 1).
    new_f = _UNSET if fwd.exhausted else fwd.radius + 1
    new_b = _UNSET if bwd.exhausted else bwd.radius + 1
    bound = min(fwd.min_open() + new_b, new_f + bwd.min_open(), new_f + new_b)
    return bound >= target


def _bidirectional(g, s, t, cap, engine, mask=None, hub_restrict=None,
                   alternate=False, collect=False, conservative=False):
    """Shared bidirectional core; only distances strictly below cap are reported."""
    stats = SearchStats(engine)
    if s == t:
        return QueryResult(0 if 0 < cap else None, [s] if 0 < cap else None, stats)
    fwd = _Side(g, s, reverse=False, cap=cap)
    bwd = _Side(g, t, reverse=True, cap=cap)
    stats.enqueued = 2
    best, meet = _UNSET, -1
    forward_turn = True
    while not _should_stop(fwd, bwd, best, cap, conservative):
        if alternate:
            side = fwd if forward_turn else bwd
            if side.exhausted:
                side = bwd if side is fwd else fwd
            forward_turn = not forward_turn
        else:
            if fwd.exhausted:
                side = bwd
            elif bwd.exhausted:
                side = fwd
            else:
                side = fwd if fwd.frontier.size <= bwd.frontier.size else bwd
        new = _expand(side, stats, dst_mask=mask, hub_restrict=hub_restrict,
                      collect=collect)
        other = bwd if side is fwd else fwd
        best, meet = _register_meets(new, side, other, best, meet)
    if best >= cap:
        return QueryResult(None, None, stats)
    return QueryResult(best, _stitch(fwd, bwd, meet, s, t), stats)


def bibfs_query(g: Graph, s: int, t: int, k: int) -> QueryResult:
    """Bidirectional BFS, expanding the smaller frontier first."""
    _check_pair(g, s, t)
    return _bidirectional(g, s, t, k + 1, "bibfs")


def hn_query(g: Graph, hubs: HubSet, net: HubNetwork, s: int, t: int, k: int) -> QueryResult:
    """Bidirectional BFS where hubs expand only inside the hub network.

    Levels on vertices shadowed by restricted hubs can exceed true distances,
    but every shortest path within k keeps some vertex exact in both
    directions, so the minimum over meeting vertices is still the distance.
    Directions alternate strictly.
    """
    _check_pair(g, s, t)
    return _bidirectional(g, s, t, k + 1, "hn",
                          hub_restrict=(hubs.is_hub, net.member),
                          alternate=True, conservative=True)


def hp_bbfs(g: Graph, hub_mask, s: int, t: int, bound: int, collect=False):
    """Bidirectional BFS that never enqueues a masked vertex.

    Returns a QueryResult whose distance is strictly below bound, or absent.
    """
    _check_pair(g, s, t)
    if hub_mask[s] or hub_mask[t]:
        raise ValueError("hub-pruning search requires unmasked endpoints")
    return _bidirectional(g, s, t, bound, "hp-bbfs", mask=hub_mask, collect=collect)


def _level_classes(idx, v, side):
    """Label sublists keyed by distance; hubs own only the implicit self class."""
    if idx.hubs.is_hub[v]:
        return {0: np.array([idx.hubs.rank[v]], dtype=np.int64)}
    table = idx.labels_out if side == "out" else idx.labels_in
    ranks, dists, _ = table.vertex_slice(v)
    classes = {}
    lo = 0
    while lo < dists.size:
        p = int(dists[lo])
        hi = lo + int(np.searchsorted(dists[lo:], p + 1))
        classes[p] = ranks[lo:hi].astype(np.int64)
        lo = hi
    return classes


def estimate(idx: Hub2Index, s: int, t: int) -> Estimate:
    """Levelwise label join: the minimum of d(s,x) + matrix[x,y] + d(y,t).

    Distance classes are visited in nondecreasing class sum (source level
    ascending within equal sums) and the join stops as soon as the best value
    beats every remaining class sum.  Candidates whose middle leg is missing
    or whose total exceeds k are discarded.
    """
    k = idx.k
    cls_s = _level_classes(idx, s, "out")
    cls_t = _level_classes(idx, t, "in")
    dist = idx.matrix.dist
    ids = idx.hubs.ids
    best = _UNSET
    arg = None
    join_ops = 0
    for total_pq in range(0, 2 * k + 1):
        if total_pq > k or best < total_pq:
            break
        for p in range(0, total_pq + 1):
            q = total_pq - p
            xs = cls_s.get(p)
            ys = cls_t.get(q)
            if xs is None or ys is None:
                continue
            if best < total_pq:
                break
            join_ops += xs.size * ys.size
            mid = dist[np.ix_(xs, ys)].astype(np.int32)
            totals = mid + total_pq
            valid = mid <= (k - total_pq)
            if not np.any(valid):
                continue
            masked = np.where(valid, totals, _UNSET)
            flat = int(np.argmin(masked))
            value = int(masked.flat[flat])
            if value < best:
                best = value
                i, j = divmod(flat, ys.size)
                arg = (int(ids[xs[i]]), int(ids[ys[j]]))
    if best > k:
        return Estimate(None, None, join_ops)
    return Estimate(best, arg, join_ops)


def estimate_full_join(idx: Hub2Index, s: int, t: int) -> Estimate:
    """Exhaustive pairwise join over both label lists; the levelwise oracle."""
    k = idx.k
    cls_s = _level_classes(idx, s, "out")
    cls_t = _level_classes(idx, t, "in")
    ids = idx.hubs.ids
    ps = sorted(cls_s)
    qs = sorted(cls_t)
    xs = np.concatenate([cls_s[p] for p in ps]) if ps else np.empty(0, np.int64)
    ys = np.concatenate([cls_t[q] for q in qs]) if qs else np.empty(0, np.int64)
    dxs = np.concatenate([np.full(cls_s[p].size, p) for p in ps]) if ps else xs
    dys = np.concatenate([np.full(cls_t[q].size, q) for q in qs]) if qs else ys
    join_ops = int(xs.size * ys.size)
    if join_ops == 0:
        return Estimate(None, None, join_ops)
    mid = idx.matrix.dist[np.ix_(xs, ys)].astype(np.int32)
    totals = dxs[:, None] + mid + dys[None, :]
    valid = (mid != INF) & (totals <= k)
    if not np.any(valid):
        return Estimate(None, None, join_ops)
    masked = np.where(valid, totals, _UNSET)
    flat = int(np.argmin(masked))
    i, j = divmod(flat, ys.size)
    return Estimate(int(masked.flat[flat]), (int(ids[xs[i]]), int(ids[ys[j]])), join_ops)


def hl_query(g: Graph, idx: Hub2Index, s: int, t: int, collect=False) -> QueryResult:
    """Two-step query: label-join estimate, then hub-pruning bidirectional BFS.

    A hub endpoint makes the estimate exact (its implicit self label joins the
    core-hub recursion), so the second step runs only for non-hub endpoints,
    bounded by the estimate.  On equal distances the estimate's path wins.
    """
    _check_pair(g, s, t)
    k = idx.k
    stats = SearchStats("hl")
    if s == t:
        return QueryResult(0, [s], stats)
    est = estimate(idx, s, t)
    stats.join_ops = est.join_ops
    if idx.hubs.is_hub[s] or idx.hubs.is_hub[t]:
        if est.value is None:
            return QueryResult(None, None, stats)
        x, y = est.argpair
        path = reconstruct_estimated_path(idx, g, s, x, y, t)
        return QueryResult(est.value, path, stats)
    bound = est.value if est.value is not None else k + 1
    res = hp_bbfs(g, idx.hubs.is_hub, s, t, bound, collect=collect)
    res.stats.join_ops = est.join_ops
    res.stats.engine = "hl"
    if res.found:
        return res
    if est.value is not None:
        x, y = est.argpair
        path = reconstruct_estimated_path(idx, g, s, x, y, t)
        return QueryResult(est.value, path, res.stats)
    return QueryResult(None, None, res.stats)


def _port_step(idx, g, v, hub_rank, incoming):
    """Follow one port: the recorded next vertex one step closer to the hub."""
    table = idx.labels_in if incoming else idx.labels_out
    ranks, dists, ports = table.vertex_slice(v)
    pos = np.flatnonzero(ranks == hub_rank)
    if pos.size != 1:
        raise IndexIntegrityError(
            f"vertex {v} lacks a label for hub rank {hub_rank}; index is corrupted")
    port = int(ports[pos[0]])
    offsets, targets = g.adjacency(reverse=incoming)
    lo, hi = int(offsets[v]), int(offsets[v + 1])
    if port >= hi - lo:
        raise IndexIntegrityError(f"port {port} out of range for vertex {v}")
    return int(targets[lo + port]), int(dists[pos[0]])


def _walk_ports(idx, g, start, hub_vertex, incoming):
    """Vertex sequence from start to the hub by repeated port hops."""
    hub_rank = int(idx.hubs.rank[hub_vertex])
    path = [start]
    v = start
    last_dist = idx.k + 1
    while v != hub_vertex:
        v, d = _port_step(idx, g, v, hub_rank, incoming)
        if d >= last_dist:
            raise IndexIntegrityError("port walk does not approach its hub")
        last_dist = d
        path.append(v)
    return path


def _expand_matrix_path(idx, i, j, depth=0):
    """Vertex sequence between two hubs, recursing through via witnesses."""
    if depth > idx.k:
        raise IndexIntegrityError("witness recursion exceeds the distance bound")
    ids = idx.hubs.ids
    if i == j:
        return [int(ids[i])]
    entry = idx.matrix.witness.get((i, j))
    if entry is None:
        raise IndexIntegrityError(f"missing witness for hub pair ({i}, {j})")
    tag, payload = entry
    if tag == "inline":
        return [int(v) for v in payload]
    left = _expand_matrix_path(idx, i, payload, depth + 1)
    right = _expand_matrix_path(idx, payload, j, depth + 1)
    return left + right[1:]


def reconstruct_estimated_path(idx: Hub2Index, g: Graph, s, x, y, t) -> list:
    """Materialize the estimated path s..x..y..t from ports and witnesses."""
    rank_x = int(idx.hubs.rank[x])
    rank_y = int(idx.hubs.rank[y])
    if rank_x < 0 or rank_y < 0:
        raise IndexIntegrityError("estimate endpoints are not hubs")
    head = _walk_ports(idx, g, s, x, incoming=False)
    middle = _expand_matrix_path(idx, rank_x, rank_y)
    tail = _walk_ports(idx, g, t, y, incoming=True)
    tail.reverse()
    return head + middle[1:] + tail[1:]


def query_with_engine(engine, g, s, t, k, hubs=None, net=None, idx=None) -> QueryResult:
    """Dispatch by engine name; used by the command-line front end."""
    if engine == "bfs":
        return bfs_query(g, s, t, k)
    if engine == "bibfs":
        return bibfs_query(g, s, t, k)
    if engine == "hn":
        if hubs is None or net is None:
            raise ValueError("hn engine needs a hub set and a discovered network")
        return hn_query(g, hubs, net, s, t, k)
    if engine == "hl":
        if idx is None:
            raise ValueError("hl engine needs a built index")
        return hl_query(g, idx, s, t)
    raise ValueError(f"unknown engine {engine!r}")


def check_result(g: Graph, res: QueryResult, expected_distance=None) -> bool:
    """Certify a result: path validates, length matches, endpoints included."""
    if res.distance is None:
        return res.path is None and (expected_distance is None)
    if res.path is None or len(res.path) != res.distance + 1:
        return False
    if expected_distance is not None and res.distance != expected_distance:
        return False
    return validate_path(g, res.path)
