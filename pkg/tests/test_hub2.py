import io

import numpy as np
import pytest

import hubpath.hub2 as hub2
from hubpath import (
    INF,
    Graph,
    HubSet,
    IndexFormatError,
    build_index,
    core_hubs_oracle,
    deserialize,
    index_stats,
    label_bfs,
    select_hubs,
    serialize,
    validate_path,
)

from conftest import ba_graph, er_graph
from oracles import adjacency_from_graph, all_pairs_dist, core_hub_set


def hubset(g, ids):
    return HubSet.from_ids(g.n, ids)


def label_sets(idx, side="out"):
    """Per-vertex {(hub id, dist)} sets as built, self entries for hubs."""
    table = idx.labels_out if side == "out" else idx.labels_in
    ids = idx.hubs.ids
    out = []
    for v in range(idx.n):
        if idx.hubs.is_hub[v]:
            out.append({(int(v), 0)})
            continue
        ranks, dists, _ = table.vertex_slice(v)
        out.append({(int(ids[r]), int(d)) for r, d in zip(ranks, dists)})
    return out


# ---------------------------------------------------------------- fixtures

def chain4_index(chain4):
    hubs = hubset(chain4, [1, 2])
    return build_index(chain4, hubs, 4)


def test_chain_matrix_and_labels(chain4):
    idx = chain4_index(chain4)
    assert idx.matrix.dist[0, 1] == 1
    tag, payload = idx.matrix.witness[(0, 1)]
    assert tag == "inline" and payload.tolist() == [1, 2]
    sets = label_sets(idx)
    assert sets[0] == {(1, 1)}   # hub 2 is blocked: d(0,2) = d(0,1) + d(1,2)
    assert sets[3] == {(2, 1)}


def test_five_chain_via_witness():
    # 0-1-2-3-4 with hubs 0, 2, 4: the far pair decomposes through the middle
    g = Graph.from_edges(5, [0, 1, 2, 3], [1, 2, 3, 4], directed=False)
    idx = build_index(g, hubset(g, [0, 2, 4]), 4)
    assert idx.matrix.dist[0, 2] == 4
    assert idx.matrix.witness[(0, 2)] == ("via", 1)
    assert idx.matrix.dist[0, 1] == 2 and idx.matrix.dist[1, 2] == 2


def test_star_single_hub(star6):
    idx = build_index(star6, hubset(star6, [0]), 6)
    assert idx.matrix.dist.shape == (1, 1)
    assert idx.matrix.dist[0, 0] == 0
    sets = label_sets(idx)
    for leaf in range(1, 6):
        assert sets[leaf] == {(0, 1)}
        _, _, ports = idx.labels_in.vertex_slice(leaf)
        assert ports.tolist() == [0]  # only neighbor is the center


def test_square_tie_breaks_through_smaller_id():
    # 4-cycle 0-1-2-3 with hubs 0 and 2: two shortest routes, path via 1 wins
    g = Graph.from_edges(4, [0, 1, 2, 3], [1, 2, 3, 0], directed=False)
    idx = build_index(g, hubset(g, [0, 2]), 2)
    assert idx.matrix.dist[0, 1] == 2
    tag, payload = idx.matrix.witness[(0, 1)]
    assert tag == "inline" and payload.tolist() == [0, 1, 2]


def test_three_chain_label_and_port():
    g = Graph.from_edges(3, [0, 1], [1, 2], directed=False)
    idx = build_index(g, hubset(g, [0, 2]), 4)
    ranks, dists, ports = idx.labels_in.vertex_slice(1)
    assert ranks.tolist() == [0, 1] and dists.tolist() == [1, 1]
    # vertex 1's sorted neighbors are [0, 2]: port 0 points at hub 0
    assert ports.tolist() == [0, 1]
    assert idx.matrix.witness[(0, 1)][1].tolist() == [0, 1, 2]


def test_triangle_single_hub_row():
    g = Graph.from_edges(3, [0, 0, 1], [1, 2, 2], directed=False)
    hubs = hubset(g, [0])
    row, (lv, ld, lr, lp), wit = label_bfs(g, hubs, 0, 2)
    assert row.tolist() == [0]
    assert wit == {}
    labeled = np.concatenate(lv).tolist()
    assert sorted(labeled) == [1, 2]
    assert all(d == 1 for d in np.concatenate(ld))


def test_label_bfs_requires_hub(chain4):
    with pytest.raises(ValueError):
        label_bfs(chain4, hubset(chain4, [1, 2]), 0, 4)


def test_build_rejects_empty_hubs_and_bad_k(chain4):
    with pytest.raises(ValueError):
        build_index(chain4, hubset(chain4, []), 4)
    with pytest.raises(ValueError):
        build_index(chain4, hubset(chain4, [1]), 0)
    with pytest.raises(ValueError):
        build_index(chain4, hubset(chain4, [1]), 255)


# ------------------------------------------------------------ oracle checks

def test_core_hubs_oracle_trivials(chain4):
    hubs = hubset(chain4, [1, 2])
    assert core_hubs_oracle(chain4, hubs, 4, 0) == {(1, 1)}
    assert core_hubs_oracle(chain4, hubs, 4, 1) == {(1, 0)}
    far = Graph.from_edges(6, [0, 1, 2, 3, 4], [1, 2, 3, 4, 5], directed=False)
    assert core_hubs_oracle(far, hubset(far, [5]), 2, 0) == set()


def test_labels_equal_definition_oracle_undirected():
    for seed in (1, 2, 3):
        g = er_graph(160, 6, seed=seed)
        hubs = select_hubs(g, 8)
        idx = build_index(g, hubs, 4)
        sets = label_sets(idx)
        for v in range(g.n):
            assert sets[v] == core_hubs_oracle(g, hubs, 4, v), f"vertex {v} seed {seed}"


def test_labels_equal_definition_oracle_directed():
    g = er_graph(140, 6, seed=4, directed=True)
    hubs = select_hubs(g, 8)
    idx = build_index(g, hubs, 4)
    out_sets = label_sets(idx, "out")
    in_sets = label_sets(idx, "in")
    rows = all_pairs_dist(adjacency_from_graph(g), 4)
    hub_ids = set(int(h) for h in hubs.ids)
    for v in range(g.n):
        # built labels, the library's definition oracle, and the independent
        # queue-BFS oracle must all agree, on both sides
        assert out_sets[v] == core_hubs_oracle(g, hubs, 4, v, side="out")
        assert out_sets[v] == core_hub_set(rows, v, hub_ids, 4)
        assert in_sets[v] == core_hubs_oracle(g, hubs, 4, v, side="in")
        assert in_sets[v] == core_hub_set(rows, v, hub_ids, 4, incoming=True)


def test_matrix_distances_exact():
    g = ba_graph(200, 3, seed=5)
    k = 4
    hubs = select_hubs(g, 10)
    idx = build_index(g, hubs, k)
    rows = all_pairs_dist(adjacency_from_graph(g))
    for i, u in enumerate(hubs.ids):
        for j, v in enumerate(hubs.ids):
            true = rows[int(u)].get(int(v))
            got = int(idx.matrix.dist[i, j])
            if true is not None and true <= k:
                assert got == true
            else:
                assert got == INF


def test_witness_soundness():
    g = ba_graph(220, 3, seed=9)
    k = 5
    hubs = select_hubs(g, 12)
    idx = build_index(g, hubs, k)
    is_hub = hubs.is_hub
    for (i, j), (tag, payload) in idx.matrix.witness.items():
        d = int(idx.matrix.dist[i, j])
        if tag == "inline":
            assert len(payload) == d + 1
            assert payload[0] == hubs.ids[i] and payload[-1] == hubs.ids[j]
            assert validate_path(g, payload.tolist())
            assert not any(is_hub[v] for v in payload[1:-1])
        else:
            w = payload
            assert w not in (i, j)
            assert int(idx.matrix.dist[i, w]) + int(idx.matrix.dist[w, j]) == d


def test_port_suffix_closure():
    g = er_graph(200, 7, seed=6)
    k = 4
    hubs = select_hubs(g, 10)
    idx = build_index(g, hubs, k)
    ids = hubs.ids
    for v in range(g.n):
        ranks, dists, ports = idx.labels_in.vertex_slice(v)
        for r, d, p in zip(ranks, dists, ports):
            cur, steps = v, 0
            dd = int(d)
            while cur != int(ids[r]):
                nxt = int(g.neighbors(cur)[idx.labels_in.vertex_slice(cur)[2][
                    np.flatnonzero(idx.labels_in.vertex_slice(cur)[0] == r)[0]]])
                steps += 1
                cur = nxt
                assert steps <= dd
            assert steps == dd


def test_adjacent_hubs_always_labeled():
    # nothing can block a length-1 path
    g = er_graph(150, 6, seed=12)
    hubs = select_hubs(g, 10)
    idx = build_index(g, hubs, 4)
    sets = label_sets(idx)
    for v in range(g.n):
        if hubs.is_hub[v]:
            continue
        for u in g.neighbors(v):
            if hubs.is_hub[u]:
                assert (int(u), 1) in sets[v]


def test_index_stats_star(star6):
    idx = build_index(star6, hubset(star6, [0]), 6)
    stats = index_stats(idx)
    assert stats["avg_label_count"] == 1.0
    assert stats["max_label_count"] == 1
    assert stats["matrix_finite_fraction"] == 1.0
    assert stats["bytes"] > 0


# ------------------------------------------------------------ serialization

def test_round_trip_identity(chain4):
    idx = chain4_index(chain4)
    blob = hub2.to_bytes(idx)
    back = hub2.from_bytes(blob)
    assert back == idx
    assert hub2.to_bytes(back) == blob


def test_serialize_deterministic():
    g = er_graph(150, 6, seed=2)
    hubs = select_hubs(g, 8)
    b1 = hub2.to_bytes(build_index(g, hubs, 4))
    b2 = hub2.to_bytes(build_index(g, hubs, 4))
    assert b1 == b2


def test_serialize_file_roundtrip(tmp_path, chain4):
    idx = chain4_index(chain4)
    path = tmp_path / "chain.hub2"
    serialize(idx, path)
    assert deserialize(path) == idx
    with open(path, "rb") as fh:
        assert deserialize(fh) == idx
    sink = io.BytesIO()
    serialize(idx, sink)
    assert deserialize(sink.getvalue()) == idx


def test_truncated_file_rejected(chain4):
    blob = hub2.to_bytes(chain4_index(chain4))
    for cut in (4, len(blob) // 2, len(blob) - 1):
        with pytest.raises(IndexFormatError):
            hub2.from_bytes(blob[:cut])


def test_every_flipped_byte_rejected_or_roundtrips(chain4):
    idx = chain4_index(chain4)
    blob = bytearray(hub2.to_bytes(idx))
    for pos in range(len(blob)):
        corrupted = bytearray(blob)
        corrupted[pos] ^= 0xFF
        with pytest.raises(IndexFormatError):
            hub2.from_bytes(bytes(corrupted))


def test_bad_magic_and_version(chain4):
    blob = bytearray(hub2.to_bytes(chain4_index(chain4)))
    with pytest.raises(IndexFormatError, match="checksum"):
        hub2.from_bytes(b"XXXX" + bytes(blob[4:]))


def test_directed_round_trip():
    g = er_graph(120, 5, seed=3, directed=True)
    idx = build_index(g, select_hubs(g, 6), 4)
    assert idx.directed
    back = hub2.from_bytes(hub2.to_bytes(idx))
    assert back == idx
    assert back.labels_out == idx.labels_out


def test_index_matches_graph(chain4):
    idx = chain4_index(chain4)
    assert idx.matches(chain4)
    other = Graph.from_edges(4, [0, 1, 3], [1, 2, 0], directed=False)
    assert not idx.matches(other)
