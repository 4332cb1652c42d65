"""
Loading graphs and running bounded searches
===========================================

The library works on unweighted graphs stored in compressed sparse form.
Edge lists use the plain text format common for public graph datasets:
'#' comments, one "u v" pair per line.
"""

from hubpath import bfs_query, bounded_bfs, gen_synthetic, load_edge_list, validate_path

# Parse a tiny graph straight from bytes.  Undirected mode stores both
# orientations, duplicates collapse, self-loops are dropped.
text = b"""# a toy network
0 1
1 2
2 3
1 3
"""
g = load_edge_list(text)
print(f"loaded {g}")
print("neighbors of 1:", g.neighbors(1).tolist())

# Exact distances out to a radius, as a dict.
print("distances from 0 within 2 hops:", bounded_bfs(g, 0, 2))

# Bounded queries return the distance and one certified shortest path
# only when the distance is within the bound.
res = bfs_query(g, 0, 3, k=6)
print(f"0 -> 3: distance {res.distance}, path {res.path}, "
      f"valid={validate_path(g, res.path)}")

res = bfs_query(g, 0, 3, k=1)
print("0 -> 3 with k=1:", res.distance, "(beyond the bound)")

# Synthetic generators are deterministic in their seed.  The preferential
# attachment graph is the scale-free stand-in used across the demos: a few
# vertices collect most of the edges.
ba = load_edge_list(gen_synthetic("ba", 5000, 5, seed=1))
deg = ba.total_degrees()
print(f"\npreferential attachment: n={ba.n}, mean degree {deg.mean():.1f}, "
      f"max degree {deg.max()}")
