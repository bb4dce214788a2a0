"""Adjacency spectra, (n, d, lambda) summaries and the mixing bound on sigma."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph, bipartition, is_connected

MAX_N = 3000
EIG_TOL = 1e-6


def adjacency_matrix(g: Graph) -> np.ndarray:
    """Dense adjacency matrix; a loop contributes 1 on the diagonal."""
    a = np.zeros((g.n, g.n))
    for u, v in g.edges:
        a[u, v] = a[v, u] = 1.0
    for v in g.loops:
        a[v, v] = 1.0
    return a


def spectrum(g: Graph, check: bool = True) -> list[float]:
    """Sorted eigenvalues (ascending), with residual checks on the extremes."""
    if g.n > MAX_N:
        raise ValueError(f"graph too large for the dense eigensolver (n={g.n} > {MAX_N})")
    if g.n == 0:
        return []
    a = adjacency_matrix(g)
    vals, vecs = np.linalg.eigh(a)
    if check:
        for idx in {0, 1, g.n - 2, g.n - 1} & set(range(g.n)):
            v = vecs[:, idx]
            res = np.linalg.norm(a @ v - vals[idx] * v)
            if res > 1e-6 * np.linalg.norm(v):
                raise ArithmeticError(f"eigenpair residual {res:.3g} too large")
    return [float(x) for x in vals]


@dataclass
class SpectralSummary:
    n: int
    d: int
    lam: float
    bipartite: bool
    eigenvalues: list[float]

    def line(self) -> str:
        return f"{self.n} {self.d} {self.lam:.12g} {(self.d - self.lam) / 2:.12g}"


def _regular_degree(g: Graph) -> int:
    degs = set(g.degrees())
    if len(degs) != 1:
        raise ValueError("graph is not regular")
    return degs.pop()


def ndl_summary(g: Graph) -> SpectralSummary:
    """Largest absolute eigenvalue other than one +d (and one -d if bipartite)."""
    if not is_connected(g):
        raise ValueError("graph is not connected")
    d = _regular_degree(g)
    ev = spectrum(g)
    rest = list(ev)
    top = max(range(len(rest)), key=lambda i: rest[i])
    if abs(rest[top] - d) > EIG_TOL:
        raise ArithmeticError("top eigenvalue differs from the degree")
    rest.pop(top)
    bip = bipartition(g) is not None
    if bip:
        low = min(range(len(rest)), key=lambda i: rest[i])
        if abs(rest[low] + d) > EIG_TOL:
            raise ArithmeticError("bipartite graph without eigenvalue -d")
        rest.pop(low)
    lam = max((abs(x) for x in rest), default=0.0)
    return SpectralSummary(g.n, d, lam, bip, ev)


@dataclass
class MixingBound:
    d: int
    lam: float
    bound: float
    note: str

    @property
    def implied_sigma(self) -> int:
        """Smallest integer strictly above the bound."""
        return math.floor(self.bound) + 1


def mixing_sensitivity_bound(base: Graph) -> MixingBound:
    """sigma of the Kronecker double cover of ``base`` exceeds (d - lambda)/2.

    The cover is connected only when the base is connected and not
    bipartite, which is required here.
    """
    if bipartition(base) is not None:
        raise ValueError("base is bipartite, its double cover is disconnected")
    s = ndl_summary(base)
    return MixingBound(s.d, s.lam, (s.d - s.lam) / 2,
                       f"n={s.n} d={s.d} lambda={s.lam:.9g}")


def edge_count_between(g: Graph, S, T) -> int:
    """e(S, T) counting ordered pairs (s, t) with s in S, t in T adjacent."""
    T = set(T)
    total = 0
    for s in S:
        total += sum(1 for u in g.neighbors(s) if u in T)
        if s in T and s in g.loops:
            total += 1
    return total


def mixing_inequality_holds(g: Graph, S, T, lam: float | None = None) -> bool:
    """Check e(S,T) >= (d - lambda)|S||T|/n for vertex sets with |S| + |T| = n.

    With |S| + |T| = n the error term of the expander mixing lemma equals
    lambda|S||T|/n, which gives this lower bound.
    """
    S, T = list(S), list(T)
    if len(S) + len(T) != g.n:
        raise ValueError("need |S| + |T| = n")
    d = _regular_degree(g)
    if lam is None:
        lam = ndl_summary(g).lam
    return edge_count_between(g, S, T) >= (d - lam) * len(S) * len(T) / g.n - 1e-6


@dataclass
class MinimalityReport:
    d: int
    lam: float
    spectral_says_not_minimal: bool
    removable: list[int]

    @property
    def minimal(self) -> bool:
        return not self.removable

    @property
    def consistent(self) -> bool:
        # the spectral test is one-sided: it can only certify non-minimality
        return not (self.spectral_says_not_minimal and self.minimal)

    def __str__(self) -> str:
        head = f"lambda={self.lam:.6g} d-4={self.d - 4}"
        if self.spectral_says_not_minimal:
            head += " -> not a minimal Cayley graph"
        return head + f"; removable generators: {self.removable or 'none'}"


def minimality_diagnostic(g: Graph) -> MinimalityReport:
    """Compare lambda with d - 4 and test generator removal directly."""
    if g.cayley is None:
        raise ValueError("graph does not carry its Cayley data")
    from .groups import generated_subgroup_order

    grp, conn = g.cayley.group, g.cayley.conn
    s = ndl_summary(g)
    removable = []
    seen = set()
    for c in sorted(conn):
        if c in seen:
            continue
        pair = {c, grp.inv(c)}
        seen |= pair
        rest = [x for x in conn if x not in pair]
        if rest and generated_subgroup_order(grp, rest) == grp.order:
            removable.append(c)
    return MinimalityReport(s.d, s.lam, s.lam < s.d - 4, removable)


def dump_spectrum(ev: list[float]) -> str:
    return "".join(f"{x:.12g}\n" for x in ev)
