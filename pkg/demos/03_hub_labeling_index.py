"""
The hub-labeling index: matrix, core-hub labels, and ports
==========================================================

The heavier acceleration precomputes two things:

- the hub-pair distance matrix (k-bounded, one byte per entry) with a path
  witness per finite entry, and
- for every other vertex, its *core hubs*: the hubs it can reach without
  any other hub strictly between on any shortest path.  Each label stores
  the distance and a port -- the offset of the next-hop neighbor in the
  vertex's sorted adjacency list -- so paths are recovered without storing
  them.

Core hubs prune aggressively: a vertex keeps only a small fraction of the
hub set, yet together with the matrix it can reproduce an exact shortest
path whenever some shortest path touches a hub.
"""

import io

from hubpath import (
    build_index,
    core_hubs_oracle,
    deserialize,
    estimate,
    gen_synthetic,
    index_stats,
    load_edge_list,
    reconstruct_estimated_path,
    select_hubs,
    serialize,
)

g = load_edge_list(gen_synthetic("ba", 5000, 5, seed=2))
hubs = select_hubs(g, 50)
idx = build_index(g, hubs, k=6)

stats = index_stats(idx)
print(f"{g}, {hubs.size} hubs, k=6")
print(f"labels per non-hub vertex: avg {stats['avg_label_count']:.1f}, "
      f"max {stats['max_label_count']} (of {hubs.size} hubs)")
print(f"matrix fill: {stats['matrix_finite_fraction']:.0%} finite, "
      f"index size {stats['bytes'] / 1024:.0f} KiB")

# Inspect one vertex's labels.
v = int((~hubs.is_hub).nonzero()[0][0])
ranks, dists, ports = idx.labels_in.vertex_slice(v)
print(f"\nvertex {v} labels (hub, dist, port):",
      [(int(hubs.ids[r]), int(d), int(p)) for r, d, p in zip(ranks, dists, ports)][:6])

# The label set matches the definition applied to exact distances.
print("definition oracle agrees:",
      {(int(hubs.ids[r]), int(d)) for r, d in zip(ranks, dists)}
      == core_hubs_oracle(g, hubs, 6, v))

# Estimate a distance through the labels and rebuild the witnessed path.
s, t = v, int((~hubs.is_hub).nonzero()[0][-1])
est = estimate(idx, s, t)
print(f"\nestimate {s} -> {t}: {est.value} via hub pair {est.argpair} "
      f"({est.join_ops} label comparisons)")
if est.value is not None:
    x, y = est.argpair
    path = reconstruct_estimated_path(idx, g, s, x, y, t)
    print("reconstructed path:", path)

# The index serializes to a checksummed little-endian blob; identical
# inputs produce identical bytes, and any corruption is rejected on read.
sink = io.BytesIO()
serialize(idx, sink)
print(f"\nround trip OK: {deserialize(sink.getvalue()) == idx}")
