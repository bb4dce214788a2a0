"""Exhaustive reference computations for small graphs.

Everything here enumerates all 2^n vertex subsets with numpy and shares no
code with the solver.  Intended for n <= 20.
"""

import math
from functools import lru_cache

import networkx as nx
import numpy as np

MAX_N = 20


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


class SubsetTable:
    """Induced max degree and size of every vertex subset."""

    def __init__(self, g):
        n = g.n
        if n > MAX_N:
            raise ValueError("too many vertices for exhaustive enumeration")
        if g.loops:
            raise ValueError("oracle expects a loopless graph")
        self.n = n
        self.full = (1 << n) - 1
        masks = np.arange(1 << n, dtype=np.int64)
        adj = [0] * n
        for u, v in g.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        maxdeg = np.zeros(1 << n, dtype=np.int64)
        for v in range(n):
            inside = (masks >> v) & 1
            deg = np.bitwise_count(masks & adj[v]).astype(np.int64)
            maxdeg = np.maximum(maxdeg, inside * deg)
        self.masks = masks
        self.maxdeg = maxdeg
        self.size = np.bitwise_count(masks).astype(np.int64)

    def max_low_degree(self, k):
        return int(self.size[self.maxdeg <= k].max())

    def alpha(self):
        return self.max_low_degree(0)

    def min_degree_at_size(self, s):
        sel = self.size >= s
        return int(self.maxdeg[sel].min()) if sel.any() else None

    def sigma(self):
        return self.min_degree_at_size(self.alpha() + 1)

    def delta_beta(self, beta):
        from fractions import Fraction
        return self.min_degree_at_size(math.ceil(Fraction(beta) * self.n))

    def iota(self, k):
        comp = self.full ^ self.masks
        ok = (self.maxdeg <= k) & (self.maxdeg[comp] <= k)
        if not ok.any():
            return None
        return int((2 * self.size[ok] - self.n).max())


@lru_cache(maxsize=None)
def _cube_nx(d):
    return nx.hypercube_graph(d) if d else nx.empty_graph(1)


def kappa(g, d_max=6):
    """Largest d with Q_d as a subgraph, via networkx subgraph monomorphisms."""
    h = to_nx(g)
    best = 0
    for d in range(1, d_max + 1):
        if 1 << d > g.n:
            break
        gm = nx.algorithms.isomorphism.GraphMatcher(h, _cube_nx(d))
        if next(gm.subgraph_monomorphisms_iter(), None) is None:
            break
        best = d
    return best
