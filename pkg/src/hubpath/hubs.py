"""Hub-set selection: the top-beta highest-degree vertices with rank/membership services."""

from __future__ import annotations

import numpy as np

from .graph import Graph


class HubSet:
    """The selected hub vertices, ascending, with O(1) rank and membership.

    ids[rank] is the inverse of rank[v]; membership is a bitmap over V.
    """

    def __init__(self, n, ids, beta):
        self.ids = np.asarray(ids, dtype=np.uint32)
        self.beta = int(beta)
        self.rank = np.full(n, -1, np.int32)
        self.rank[self.ids] = np.arange(self.ids.size, dtype=np.int32)
        self.is_hub = np.zeros(n, bool)
        self.is_hub[self.ids] = True

    @classmethod
    def from_ids(cls, n, ids):
        """Hub set over an explicit id list (ids are sorted and deduplicated)."""
        ids = np.unique(np.asarray(ids, dtype=np.uint32))
        return cls(n, ids, ids.size)

    @property
    def size(self):
        return int(self.ids.size)

    def __contains__(self, v):
        return bool(self.is_hub[v])

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"HubSet(size={self.size}, beta={self.beta})"


def select_hubs(g: Graph, beta: int) -> HubSet:
    """Pick the beta greatest-total-degree vertices, ties toward smaller id.

    beta larger than n clamps to n.  Directed graphs rank by out+in degree:
    a hub must blow up search in either direction to matter.
    """
    if beta < 1:
        raise ValueError("beta must be >= 1")
    deg = g.total_degrees().astype(np.int64)
    order = np.lexsort((np.arange(g.n), -deg))
    chosen = np.sort(order[:min(beta, g.n)])
    return HubSet(g.n, chosen, beta)


def default_beta(n: int) -> int:
    """Default hub budget: 0.5% of n, clamped to [1, n]."""
    return max(1, min(n, round(0.005 * n)))
