"""Explicit vertex sets of small induced degree in Cayley graphs.

Each builder returns the graph together with a certificate; the sets are
produced from the combinatorial description only and checked afterwards by
``graph.verify_certificate``, which does not share code with this module.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import reduce

from . import groups as grp
from .graph import (Certificate, Graph, cartesian_product, cycle_graph, hypercube_graph,
                    lexicographic_product, make_certificate, generalized_petersen, empty_graph)

# ------------------------------------------------------------------ dihedrant


def base3_rightmost(m: int) -> int:
    """Right-most nonzero digit of m in base 3."""
    if m < 1:
        raise ValueError("m must be positive")
    while m % 3 == 0:
        m //= 3
    return m % 3


def dihedrant_matching(d: int) -> tuple[Graph, Certificate]:
    """Cay(D_{3^d}, {a^(3^i) b}) with an induced matching on 3^d + 1 vertices."""
    if not 0 <= d <= 9:
        raise ValueError("d must lie in 0..9")
    n = 3 ** d
    D = grp.dihedral(n) if n > 1 else _dihedral_one()
    conn = [D.find(((3 ** i) % n, 1)) for i in range(d + 1)]
    g = grp.cayley_graph(D, conn, name=f"dihedrant:d={d}")
    members = {(0, 0), (0, 1)}
    for i in range(1, n):
        members.add((i, 0) if base3_rightmost(i) == 1 else (i, 1))
    cert = make_certificate(g, "matching-set", 1, [D.find(x) for x in members])
    return g, cert


def _dihedral_one() -> grp.FiniteGroup:
    # D_1 = {1, b}; the range check in groups.dihedral starts at 1 anyway,
    # this keeps the d = 0 case independent of that.
    return grp.from_generators("dihedral:1", (0, 0), [(0, 1)],
                               lambda x, y: (0, x[1] ^ y[1]), lambda x: x,
                               lambda x: "b" if x[1] else "1")


# ----------------------------------------------------------------- star graphs

def derangement_count(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    a, b = 0, 1  # d_1, d_2
    if n == 1:
        return a
    for m in range(3, n + 1):
        a, b = b, (m - 1) * (a + b)
    return b


def star_class(p: tuple) -> str:
    """Domino vertex (u1, v1, u2, v2, u3, v3) of a permutation of 0..n-1."""
    n = len(p)
    moved = sum(1 for i in range(1, n) if p[i] != i)
    even = grp.perm_sign(p) == 1
    if moved == n - 1:
        return "u1" if even else "v1"
    if moved == n - 2:
        return "v2" if even else "u2"
    return "u3" if even else "v3"


def star_graph(n: int) -> tuple[grp.FiniteGroup, Graph]:
    if not 2 <= n <= 8:
        raise ValueError("n must lie in 2..8")
    S = grp.symmetric(n)
    conn = [S.find(grp.perm_from_cycles(n, [1, r])) for r in range(2, n + 1)]
    return S, grp.cayley_graph(S, conn, name=f"star:n={n}")


def star_graph_subset(n: int) -> tuple[Graph, Certificate]:
    """Larger of K = f^-1{u1,u2,v3} and K' = f^-1{v1,v2,u3} in SG_n."""
    S, g = star_graph(n)
    cls = [star_class(S.elements[v]) for v in range(S.order)]
    K = [v for v, c in enumerate(cls) if c in ("u1", "u2", "v3")]
    K2 = [v for v, c in enumerate(cls) if c in ("v1", "v2", "u3")]
    best, tag = (K, "K") if len(K) >= len(K2) else (K2, "K'")
    cert = make_certificate(g, "low-degree-set", 1, best)
    cert.note = tag
    return g, cert


# ------------------------------------------------------------- tight matchings

def tight_generator(m: int, k: int) -> tuple:
    """The involution c_k of {1..2m+1} (returned 0-based)."""
    n = 2 * m + 1
    img = []
    for i in range(1, n + 1):
        if i < k - m:
            j = i + m
        elif i <= m:
            j = i + m + 1
        elif i < k:
            j = i - m
        elif i == k:
            j = i
        else:
            j = i - m - 1
        img.append(j - 1)
    return tuple(img)


def tight_matching(m: int) -> tuple[Graph, Certificate]:
    if not 1 <= m <= 3:
        raise ValueError("m must lie in 1..3")
    n = 2 * m + 1
    gens = [tight_generator(m, k) for k in range(m + 1, n + 1)]
    for k, c in zip(range(m + 1, n + 1), gens):
        if sorted(c) != list(range(n)) or grp.perm_mul(c, c) != tuple(range(n)) or c[k - 1] != k - 1:
            raise AssertionError(f"c_{k} is not an involution fixing {k}")
    G = grp.symmetric(n) if m % 2 else grp.alternating(n)
    g = grp.cayley_graph(G, [G.find(c) for c in gens], name=f"tight:m={m}")
    M = [v for v in range(G.order) if G.elements[v][0] >= m]
    return g, make_certificate(g, "matching-set", 1, M)


def tightness_bound(n: int, d: int) -> float:
    """Largest possible induced-matching set in a d-regular n-vertex graph."""
    return d * n / (2 * d - 1)


# -------------------------------------------------------------- lattices

def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass
class ArcFamily:
    """A family of subsets of {1..n}, each stored as a bitmask (bit i-1 = i)."""
    sets: list[int]

    @classmethod
    def from_lists(cls, sets) -> "ArcFamily":
        return cls([sum(1 << (e - 1) for e in s) for s in sets])

    def r(self) -> int:
        return max((_popcount(s) for s in self.sets), default=0)

    def t(self) -> int:
        """Largest subfamily in which every member owns a private element."""
        best = 0
        fam = list(dict.fromkeys(self.sets))
        for size in range(len(fam), 0, -1):
            if size <= best:
                break
            for sub in itertools.combinations(fam, size):
                ok = True
                for i, s in enumerate(sub):
                    others = reduce(lambda a, b: a | b, (x for j, x in enumerate(sub) if j != i), 0)
                    if not s & ~others:
                        ok = False
                        break
                if ok:
                    return size
        return best

    def t_upper(self) -> int:
        """Cheap upper bound on t: private elements are distinct elements of the union."""
        union = reduce(lambda a, b: a | b, self.sets, 0)
        return min(len(set(self.sets)), _popcount(union))


@dataclass
class LatticeModel:
    """A lattice realized as a family of subsets of {1..n} ordered by inclusion."""
    ground: int
    members: list[int]
    covers: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        self.index = {x: i for i, x in enumerate(self.members)}
        if len(self.index) != len(self.members):
            raise ValueError("duplicate lattice members")
        if not self.covers:
            self.covers = [(i, self.index[x | (1 << e)]) for i, x in enumerate(self.members)
                           for e in range(self.ground)
                           if not x >> e & 1 and (x | (1 << e)) in self.index]

    @classmethod
    def boolean(cls, n: int) -> "LatticeModel":
        return cls(n, list(range(1 << n)))

    def check(self) -> list[str]:
        """Structural checks; the join check is exhaustive up to 5000 members."""
        problems = []
        full = (1 << self.ground) - 1
        if 0 not in self.index or full not in self.index:
            problems.append("minimum/maximum are not the empty and full set")
        for a, b in self.covers:
            x, y = self.members[a], self.members[b]
            if x & ~y or _popcount(y ^ x) != 1:
                problems.append(f"cover {x:b} < {y:b} is not a one-element step")
                break
        if len(self.members) <= 5000:
            for x, y in itertools.combinations(self.members, 2):
                if self.join(x, y) is None:
                    problems.append(f"no join for {x:b}, {y:b}")
                    break
        return problems

    def join(self, x: int, y: int) -> int | None:
        ups = [z for z in self.members if z & (x | y) == (x | y)]
        least = [z for z in ups if all(w & z == z for w in ups)]
        return least[0] if least else None

    def cover_graph(self, meta: str = "") -> Graph:
        return Graph(len(self.members), self.covers, meta=meta or f"lattice:{self.ground}")

    def up(self, F: int) -> list[int]:
        return [i for i, x in enumerate(self.members) if x & F == F]


@dataclass
class LatticeSubsetReport:
    size: int
    k: int
    direct_imbalance: int
    ie_imbalance: int | None

    @property
    def consistent(self) -> bool:
        return self.ie_imbalance is None or self.ie_imbalance == self.direct_imbalance


def lattice_x_set(model: LatticeModel, fam: ArcFamily) -> list[int]:
    """X(F) = even(up F) + odd(L - up F), as member indices."""
    for F in fam.sets:
        if F not in model.index:
            raise ValueError("family member outside the lattice")
    out = []
    for i, x in enumerate(model.members):
        above = any(x & F == F for F in fam.sets)
        if (_popcount(x) % 2 == 0) == above:
            out.append(i)
    return out


def inclusion_exclusion_imbalance(model: LatticeModel, fam: ArcFamily) -> int | None:
    """2|X(F)| - |L| from the alternating sum over joins of subfamilies.

    Uses |odd(L)| = |L|/2, which holds when the cover graph is regular;
    returns None if the family is too large to expand.
    """
    sets = list(dict.fromkeys(fam.sets))
    if len(sets) > 16:
        return None
    total = 0
    for size in range(1, len(sets) + 1):
        sign = 1 if size % 2 else -1
        for sub in itertools.combinations(sets, size):
            j = reduce(model.join, sub)
            if j is None:
                return None
            ev = od = 0
            for x in model.members:
                if x & j == j:
                    if _popcount(x) % 2:
                        od += 1
                    else:
                        ev += 1
            total += sign * (ev - od)
    return 2 * total


def lattice_subset(model: LatticeModel, fam: ArcFamily,
                   graph: Graph | None = None) -> tuple[Certificate, LatticeSubsetReport]:
    """Larger of X(F) and its complement; both induce degree <= max(r, t)."""
    g = graph if graph is not None else model.cover_graph()
    X = lattice_x_set(model, fam)
    Xs = set(X)
    comp = [i for i in range(len(model.members)) if i not in Xs]
    k = max(fam.r(), fam.t())
    best = X if len(X) >= len(comp) else comp
    direct = len(X) - len(comp)
    ie = None
    if g.is_regular():
        ie = inclusion_exclusion_imbalance(model, fam)
    cert = make_certificate(g, "low-degree-set", k, best)
    cert.note = f"direct imbalance {direct}; inclusion-exclusion {ie}"
    return cert, LatticeSubsetReport(len(best), k, direct, ie)


def cfgs_family(d: int) -> ArcFamily:
    s = math.isqrt(d - 1) + 1 if d > 1 else 1  # ceil(sqrt(d))
    blocks = [list(range(a, min(a + s, d + 1))) for a in range(1, d + 1, s)]
    return ArcFamily.from_lists(blocks)


def cfgs_subset(d: int) -> tuple[Graph, Certificate]:
    """Set of > 2^(d-1) vertices of Q_d inducing degree <= ceil(sqrt d)."""
    if not 1 <= d <= 14:
        raise ValueError("d must lie in 1..14")
    g = hypercube_graph(d)
    cert, _ = lattice_subset(LatticeModel.boolean(d), cfgs_family(d), g)
    return g, cert


# ------------------------------------------------------------------ tori

_TORUS_44 = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1), (2, 2), (3, 3)]


def cycle_coloring(j: int) -> list[str]:
    """Proper a/b/x colouring of C_j using x, each x seeing one a and one b."""
    if j % 3 == 0:
        return ["xab"[v % 3] for v in range(j)]

    def ok_x(col, v):
        return {col[(v - 1) % j], col[(v + 1) % j]} == {"a", "b"}

    col = [""] * j

    def rec(v):
        if v == j:
            if col[0] == col[-1] or "x" not in col:
                return False
            return all(ok_x(col, u) for u in range(j) if col[u] == "x")
        for c in "abx":
            if v and col[v - 1] == c:
                continue
            col[v] = c
            if v >= 2 and col[v - 1] == "x" and not ok_x(col, v - 1):
                continue
            if rec(v + 1):
                return True
        col[v] = ""
        return False

    if not rec(0):
        raise ValueError(f"no valid colouring of C_{j}")
    return col


def torus_subset(i: int, j: int) -> tuple[Graph, Certificate]:
    """Set of more than ij/2 vertices of C_i x C_j inducing degree <= 2."""
    if i < 4 or j < 4 or i % 2 or j % 2:
        raise ValueError("i and j must be even and at least 4")
    g = cartesian_product(cycle_graph(i), cycle_graph(j))
    if i == j == 4:
        verts = [u * 4 + v for u, v in _TORUS_44]
        return g, make_certificate(g, "low-degree-set", 2, verts)
    swap = i == 4
    li, lj = (j, i) if swap else (i, j)  # long cycle li is coloured row by row
    col = cycle_coloring(lj)
    chosen = []
    for v in range(lj):
        for u in range(li):
            c = col[v]
            if c == "x":
                take = u % 3 != 2 and u <= li - 2
            else:
                take = u % 2 == (0 if c == "a" else 1)
            if take:
                a, b = (v, u) if swap else (u, v)
                chosen.append(a * j + b)
    return g, make_certificate(g, "low-degree-set", 2, chosen)


# ------------------------------------------------------------------ Z_3^r

def z3r_graph(r: int) -> tuple[grp.FiniteGroup, Graph]:
    if not 1 <= r <= 9:
        raise ValueError("r must lie in 1..9")
    G = grp.elementary(3, r)
    conn = []
    for i in range(r):
        for s in (1, 2):
            conn.append(G.find(tuple(s if t == i else 0 for t in range(r))))
    return G, grp.cayley_graph(G, conn, name=f"z3r:r={r}")


def z3r_sets(r: int) -> tuple[list[tuple], list[tuple]]:
    """(A, B): |A| = 3^(r-1)+1 inducing degree 1, B a disjoint independent set."""
    A = [(0,), (1,)]
    B = [(2,)]
    for _ in range(1, r):
        A, B = ([a + (0,) for a in A] + [b + (t,) for b in B for t in (1, 2)],
                [b + (0,) for b in B]
                + [((b[0] + 1) % 3,) + b[1:] + (1,) for b in B]
                + [((b[0] + 2) % 3,) + b[1:] + (2,) for b in B])
    return A, B


def z3r_subset(r: int) -> tuple[Graph, Certificate, Certificate]:
    G, g = z3r_graph(r)
    A, B = z3r_sets(r)
    ca = make_certificate(g, "low-degree-set", 1, [G.find(a) for a in A])
    cb = make_certificate(g, "independent-set", 0, [G.find(b) for b in B])
    return g, ca, cb


# ------------------------------------------------------------ named graphs

def mobius_kantor_pauli() -> tuple[grp.FiniteGroup, Graph]:
    P = grp.pauli()
    conn = [P.find((0, c)) for c in (1, 2, 3)]
    return P, grp.cayley_graph(P, conn, name="mobius-kantor:pauli")


def mobius_kantor_metacyclic(kind: str) -> tuple[grp.FiniteGroup, Graph]:
    """Cay(M_16 or QD_16, {x, x^-1, y})."""
    G = grp.group_make(f"{kind}:16")
    x, y = G.find((1, 0)), G.find((0, 1))
    return G, grp.cayley_graph(G, [x, G.inv(x), y], name=f"mobius-kantor:{kind}")


def mobius_kantor() -> Graph:
    return generalized_petersen(8, 3)


def q3_k2bar_pauli() -> tuple[grp.FiniteGroup, Graph]:
    """Cay(P, {iI, -iX, -iZ}) closed under inverses: Q_3[K2-bar]."""
    P = grp.pauli()
    conn = grp.inverse_closure(P, [P.find((1, 0)), P.find((3, 1)), P.find((3, 3))])
    return P, grp.cayley_graph(P, conn, name="q3-k2bar:pauli")


def q3_k2bar() -> Graph:
    return lexicographic_product(hypercube_graph(3), empty_graph(2))


def mobius_kantor_models() -> dict[str, tuple[Graph, list[int]]]:
    """Cayley models of G(8,3), each with a vertex bijection onto it.

    The bijections come from a backtracking search and are meant to be
    rechecked edge by edge by the caller.
    """
    from .graph import find_isomorphism

    target = mobius_kantor()
    out = {}
    for name, build in (("pauli", mobius_kantor_pauli),
                        ("modular", lambda: mobius_kantor_metacyclic("modular")),
                        ("quasidihedral", lambda: mobius_kantor_metacyclic("quasidihedral"))):
        _, g = build()
        perm = find_isomorphism(g, target)
        if perm is None:
            raise ArithmeticError(f"{name} model is not the Mobius-Kantor graph")
        out[name] = (g, perm)
    return out
