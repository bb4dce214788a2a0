"""Finite Coxeter systems realized as permutation groups of their root systems.

Roots come from the geometric representation B(a_i, a_j) = -cos(pi/m_ij).
The orbit of the simple roots is closed in floating point, every root is
matched to a stored one within 1e-9, and the generators are then frozen
into integer permutations of the root list.  From there on everything is
exact: an element is the tuple of images of all roots, its length is the
number of positive roots it sends to negative ones.

Conventions.  The Cayley graph uses right multiplication, w ~ w s.  The
inversion set of w is {b > 0 : w^-1 b < 0}; inclusion of these sets is
the right weak order, whose cover graph is Cay(W).  The quotient
W^J = {w : l(wj) > l(w) for j in J} is an interval of the *left* weak
order, so its graph G(W^J) joins i and s i.  Every w factors uniquely as
w = i j with i in W^J and j in W_J, and the left Cayley graph sits inside
Cay(W_J) x G(W^J) through this factorization; inversion w -> w^-1 carries
that picture over to the right Cayley graph.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import cached_property

from . import groups as grp
from .constructions import LatticeModel, cfgs_family, lattice_x_set
from .graph import Certificate, Graph, is_connected, make_certificate

TOL = 1e-9

# ranks allowed per family
RANK_RANGES = {"A": (1, 6), "B": (2, 5), "D": (4, 5), "I": (1, 12)}
EXCEPTIONAL = {"H3", "H4", "F4", "E6"}
ORDERS = {"H3": 120, "H4": 14400, "F4": 1152, "E6": 51840}


class CoxeterError(ValueError):
    pass


def _path_matrix(weights: list[int]) -> list[list[int]]:
    n = len(weights) + 1
    m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for i, w in enumerate(weights):
        m[i][i + 1] = m[i + 1][i] = w
    return m


def factor_matrix(family: str, n: int) -> list[list[int]]:
    """Coxeter matrix (m_ii = 1) of one irreducible factor."""
    if family == "A":
        return _path_matrix([3] * (n - 1))
    if family == "B":
        return _path_matrix([3] * (n - 2) + [4])
    if family == "D":
        m = _path_matrix([3] * (n - 2))
        m = [row + [2] for row in m] + [[2] * n]
        m[n - 1][n - 1] = 1
        m[n - 3][n - 1] = m[n - 1][n - 3] = 3
        return m
    if family == "I":
        if n == 1:
            return [[1]]
        return [[1, n], [n, 1]]
    if family == "H":
        return _path_matrix([5] + [3] * (n - 2))
    if family == "F":
        return _path_matrix([3, 4, 3])
    if family == "E":
        # Bourbaki labels: 1-3-4-5-6 with 2 attached to 4 (0-based here)
        m = [[1 if i == j else 2 for j in range(6)] for i in range(6)]
        for a, b in [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]:
            m[a][b] = m[b][a] = 3
        return m
    raise CoxeterError(f"unknown family {family}")


def factor_order(family: str, n: int) -> int:
    key = f"{family}{n}"
    if key in ORDERS:
        return ORDERS[key]
    if family == "A":
        return math.factorial(n + 1)
    if family == "B":
        return 2 ** n * math.factorial(n)
    if family == "D":
        return 2 ** (n - 1) * math.factorial(n)
    return 2 if n == 1 else 2 * n  # I_2(n)


def parse_descriptor(desc: str) -> list[tuple[str, int]]:
    parts = desc.strip().split("x")
    out = []
    for p in parts:
        m = re.fullmatch(r"([ABDIHFE])(\d+)", p.strip())
        if not m:
            raise CoxeterError(f"malformed descriptor {desc!r}")
        fam, n = m.group(1), int(m.group(2))
        key = f"{fam}{n}"
        if fam in ("E", "F", "H"):
            if key in ("E7", "E8"):
                raise CoxeterError(f"{key} is too large to realize")
            if key not in EXCEPTIONAL:
                raise CoxeterError(f"unknown exceptional type {key}")
        else:
            lo, hi = RANK_RANGES[fam]
            if not lo <= n <= hi:
                raise CoxeterError(f"{key} outside supported range {fam}{lo}..{fam}{hi}")
        out.append((fam, n))
    return out


def _block_diagonal(blocks: list[list[list[int]]]) -> list[list[int]]:
    n = sum(len(b) for b in blocks)
    m = [[2] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(len(b)):
            for j in range(len(b)):
                m[off + i][off + j] = b[i][j]
        off += len(b)
    return m


def _root_system(matrix: list[list[int]]):
    """Roots in simple-root coordinates plus generator permutations."""
    n = len(matrix)
    B = [[-math.cos(math.pi / matrix[i][j]) if i != j else 1.0 for j in range(n)]
         for i in range(n)]

    def reflect(v, i):
        c = 2 * sum(v[k] * B[k][i] for k in range(n))
        w = list(v)
        w[i] -= c
        return tuple(w)

    def key(v):
        return tuple(round(x, 6) + 0.0 for x in v)

    simple = [tuple(1.0 if k == i else 0.0 for k in range(n)) for i in range(n)]
    roots = list(simple)
    where = {key(v): idx for idx, v in enumerate(roots)}
    frontier = list(range(n))
    while frontier:
        nxt = []
        for idx in frontier:
            for i in range(n):
                w = reflect(roots[idx], i)
                kw = key(w)
                if kw not in where:
                    where[kw] = len(roots)
                    roots.append(w)
                    nxt.append(len(roots) - 1)
                    if len(roots) > 1000:
                        raise CoxeterError("root system is not finite")
        frontier = nxt
    pos = [v for v in roots if all(x > -TOL for x in v)]
    neg = [v for v in roots if all(x < TOL for x in v)]
    if len(pos) != len(neg) or len(pos) + len(neg) != len(roots):
        raise CoxeterError("roots are not split into positive and negative ones")
    pos.sort(key=lambda v: (round(sum(v), 6), tuple(-x for x in v)))
    ordered = pos + [tuple(-x for x in v) for v in pos]
    lookup = {key(v): idx for idx, v in enumerate(ordered)}
    perms = []
    for i in range(n):
        img = []
        for v in ordered:
            w = reflect(v, i)
            j = lookup.get(key(w))
            if j is None or max(abs(a - b) for a, b in zip(ordered[j], w)) > TOL:
                raise CoxeterError("reflection image is not a root")
            img.append(j)
        perm = tuple(img)
        if any(perm[perm[k]] != k for k in range(len(perm))):
            raise CoxeterError("generator is not an involution on roots")
        perms.append(perm)
    simple_index = [lookup[key(v)] for v in simple]
    return ordered, perms, simple_index


def _compose(u: tuple, v: tuple) -> tuple:
    """u o v (apply v first) as a permutation of roots."""
    return tuple(u[k] for k in v)


def _invert(u: tuple) -> tuple:
    out = [0] * len(u)
    for k, x in enumerate(u):
        out[x] = k
    return tuple(out)


@dataclass(eq=False)
class CoxeterSystem:
    type_name: str
    factors: list[tuple[str, int]]
    matrix: list[list[int]]
    roots: list[tuple]
    generator_perms: list[tuple]
    simple_index: list[int]
    group: grp.FiniteGroup = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def reflections(self) -> int:
        return len(self.roots) // 2

    @property
    def order(self) -> int:
        return self.group.order

    @cached_property
    def lengths(self) -> list[int]:
        r = self.reflections
        return [sum(1 for k in range(r) if w[k] >= r) for w in self.group.elements]

    def length(self, w: int) -> int:
        return self.lengths[w]

    def left_mul(self, s: int, w: int) -> int:
        """Index of s * w for generator number s."""
        return self.group.index[_compose(self.generator_perms[s], self.group.elements[w])]

    def right_mul(self, w: int, s: int) -> int:
        return self.group.index[_compose(self.group.elements[w], self.generator_perms[s])]

    def word(self, w: int) -> list[int]:
        """A reduced word (generator numbers) for w, via right descents."""
        r = self.reflections
        perm = self.group.elements[w]
        out = []
        while True:
            for i, si in enumerate(self.simple_index):
                if perm[si] >= r:
                    out.append(i)
                    perm = _compose(perm, self.generator_perms[i])
                    break
            else:
                break
        return out[::-1]

    def from_word(self, word) -> int:
        w = 0
        for s in word:
            w = self.right_mul(w, s)
        return w

    def dynkin_edges(self) -> list[tuple[int, int]]:
        n = self.rank
        return [(i, j) for i in range(n) for j in range(i + 1, n) if self.matrix[i][j] >= 3]


def coxeter_system(desc: str) -> CoxeterSystem:
    factors = parse_descriptor(desc)
    total = math.prod(factor_order(f, n) for f, n in factors)
    if total > grp.MAX_ORDER:
        raise CoxeterError(f"order {total} exceeds {grp.MAX_ORDER}")
    matrix = _block_diagonal([factor_matrix(f, n) for f, n in factors])
    roots, perms, simple_index = _root_system(matrix)
    ident = tuple(range(len(roots)))

    def label(p):
        return "e" if p == ident else "?"

    # BFS by right multiplication in generator order; index 0 is the identity
    elements = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elements):
        x = elements[i]
        for g in perms:
            y = _compose(x, g)
            if y not in index:
                index[y] = len(elements)
                elements.append(y)
        i += 1
    if len(elements) != total:
        raise CoxeterError(f"{desc}: realized order {len(elements)} != {total}")
    G = grp.FiniteGroup(desc, tuple(elements), index, _compose, _invert, label,
                        tuple(index[g] for g in perms))
    sys_ = CoxeterSystem(desc, factors, matrix, roots, perms, simple_index, G)
    object.__setattr__(G, "labeler", lambda p, s=sys_: _word_label(s, p))
    return sys_


def _word_label(sys_: CoxeterSystem, perm: tuple) -> str:
    w = sys_.group.index[perm]
    word = sys_.word(w)
    return " ".join(f"s{i + 1}" for i in word) if word else "e"


def coxeter_cayley(sys_: CoxeterSystem) -> Graph:
    cached = getattr(sys_, "_cayley", None)
    if cached is None:
        cached = grp.cayley_graph(sys_.group, sys_.group.generators, name=f"coxeter:{sys_.type_name}")
        sys_._cayley = cached
    return cached


def _max_independent_size(n: int, edges: list[tuple[int, int]]) -> int:
    best = 0
    for mask in range(1 << n):
        if all(not (mask >> a & 1 and mask >> b & 1) for a, b in edges):
            best = max(best, bin(mask).count("1"))
    return best


def kappa_formula(sys_: CoxeterSystem) -> int:
    """Largest independent set of the Dynkin diagram (edges m_ij >= 3)."""
    return _max_independent_size(sys_.rank, sys_.dynkin_edges())


def inversion_set(sys_: CoxeterSystem, w: int) -> frozenset[int]:
    """Reflections (positive root indices) b with w^-1 b negative."""
    r = sys_.reflections
    inv = _invert(sys_.group.elements[w])
    return frozenset(k for k in range(r) if inv[k] >= r)


def inversion_mask(sys_: CoxeterSystem, w: int) -> int:
    return sum(1 << k for k in inversion_set(sys_, w))


def weak_order_lattice(sys_: CoxeterSystem) -> LatticeModel:
    """The right weak order as a family of inversion sets, in element order."""
    return LatticeModel(sys_.reflections, [inversion_mask(sys_, w) for w in range(sys_.order)])


# ---------------------------------------------------------------- quotients

@dataclass
class ParabolicQuotient:
    system: CoxeterSystem = field(repr=False)
    J: tuple[int, ...]
    reps: list[int]
    quotient_graph: Graph = field(repr=False)
    layer_sizes: list[int]
    subgroup: list[int] = field(repr=False, default_factory=list)


def parabolic_subgroup(sys_: CoxeterSystem, J) -> list[int]:
    """Elements of W_J in BFS order from the identity."""
    out, seen = [0], {0}
    i = 0
    while i < len(out):
        for s in J:
            y = sys_.right_mul(out[i], s)
            if y not in seen:
                seen.add(y)
                out.append(y)
        i += 1
    return out


def parabolic_quotient(sys_: CoxeterSystem, J, check: bool | None = None) -> ParabolicQuotient:
    J = tuple(sorted(set(J)))
    if any(not 0 <= j < sys_.rank for j in J):
        raise CoxeterError("J must consist of generator numbers")
    r = sys_.reflections
    els = sys_.group.elements
    reps = [w for w in range(sys_.order)
            if all(els[w][sys_.simple_index[j]] < r for j in J)]
    reps.sort(key=lambda w: (sys_.lengths[w], w))
    pos = {w: i for i, w in enumerate(reps)}
    edges = set()
    for w in reps:
        for s in range(sys_.rank):
            y = sys_.left_mul(s, w)
            if y in pos:
                a, b = pos[w], pos[y]
                edges.add((min(a, b), max(a, b)))
    qg = Graph(len(reps), edges, meta=f"quotient:{sys_.type_name}:J={list(J)}")
    top = max(sys_.lengths[w] for w in reps)
    layers = [0] * (top + 1)
    for w in reps:
        layers[sys_.lengths[w]] += 1
    sub = parabolic_subgroup(sys_, J)
    q = ParabolicQuotient(sys_, J, reps, qg, layers, sub)
    if len(reps) * len(sub) != sys_.order:
        raise CoxeterError("|W^J| |W_J| != |W|")
    if check is None:
        check = sys_.order <= 2000
    if check:
        problems = quotient_edge_partition_check(q)
        if problems:
            raise CoxeterError("edge partition check failed: " + problems[0])
    return q


def factorize(q: ParabolicQuotient) -> dict[int, tuple[int, int]]:
    """w -> (i, j) with w = i j, i in W^J, j in W_J."""
    sys_ = q.system
    out = {}
    for i in q.reps:
        for j in q.subgroup:
            w = sys_.group.mul(i, j)
            if w in out:
                raise CoxeterError("factorization is not unique")
            out[w] = (i, j)
    return out


def quotient_edge_partition_check(q: ParabolicQuotient) -> list[str]:
    """Every left edge {w, s w} with w = i j either moves i inside W^J keeping
    j (a quotient edge), or keeps i and moves j by a generator of J."""
    sys_ = q.system
    fac = factorize(q)
    problems = []
    if len(fac) != sys_.order:
        problems.append("cosets do not cover W")
    Jset = set(q.J)
    gen_of = {sys_.group.generators[t]: t for t in range(sys_.rank)}
    for w, (i, j) in fac.items():
        for s in range(sys_.rank):
            i2, j2 = fac[sys_.left_mul(s, w)]
            if j2 == j and i2 != i:
                continue
            if i2 == i:
                step = sys_.group.mul(sys_.group.inv(j), j2)
                t = gen_of.get(step)
                if t is not None and t in Jset:
                    continue
            problems.append(f"left edge at element {w} by s{s + 1} mixes both parts")
            return problems
    return problems


def iota0_quotient(q: ParabolicQuotient) -> int:
    g = q.quotient_graph
    if is_connected(g):
        even = sum(c for l, c in enumerate(q.layer_sizes) if l % 2 == 0)
        odd = sum(c for l, c in enumerate(q.layer_sizes) if l % 2 == 1)
        return abs(even - odd)
    from .solver import iota
    return iota(g, 0).value or 0


def maximal_independent_sets(sys_: CoxeterSystem) -> list[tuple[int, ...]]:
    n = sys_.rank
    edges = sys_.dynkin_edges()
    adj = [0] * n
    for a, b in edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    out = []
    for mask in range(1 << n):
        if any(mask >> a & 1 and mask >> b & 1 for a, b in edges):
            continue
        if all(mask >> v & 1 or adj[v] & mask for v in range(n)):
            out.append(tuple(v for v in range(n) if mask >> v & 1))
    out.sort()
    return out


@dataclass
class CubeLikeResult:
    cube_like: bool
    J: tuple[int, ...] | None
    iota0: int
    log: list[str]

    def __bool__(self):
        return self.cube_like


def is_cube_like(sys_: CoxeterSystem) -> CubeLikeResult:
    kappa = kappa_formula(sys_)
    target = math.isqrt(kappa - 1) + 1 if kappa > 1 else kappa
    log = []
    for J in maximal_independent_sets(sys_):
        cj = math.isqrt(len(J) - 1) + 1 if len(J) > 1 else len(J)
        if cj != target:
            log.append(f"J={list(J)}: ceil(sqrt|J|)={cj} != {target}")
            continue
        if (sys_.reflections - len(J)) % 2:
            log.append(f"J={list(J)}: r-|J| odd")
            continue
        val = iota0_quotient(parabolic_quotient(sys_, J, check=False))
        log.append(f"J={list(J)}: iota0={val}")
        if val > 0:
            return CubeLikeResult(True, J, val, log)
    return CubeLikeResult(False, None, 0, log)


def _ceil_sqrt(x: int) -> int:
    return 0 if x <= 0 else math.isqrt(x - 1) + 1


def cube_like_subset(sys_: CoxeterSystem, J=None) -> Certificate:
    """Product of the cube partition with the quotient's parity classes."""
    if J is None:
        res = is_cube_like(sys_)
        if not res:
            raise CoxeterError(f"{sys_.type_name} has no cube-like witness")
        J = res.J
    J = tuple(sorted(J))
    if any(sys_.matrix[a][b] != 2 for a, b in itertools.combinations(J, 2)):
        raise CoxeterError("W_J is not abelian")
    q = parabolic_quotient(sys_, J, check=False)
    if iota0_quotient(q) <= 0:
        raise CoxeterError("J is not a cube-like witness")
    d = len(J)
    k = _ceil_sqrt(d)
    # cube partition (A, B) of Q_d with the larger side first
    if d:
        cube_lat = LatticeModel.boolean(d)
        X = set(lattice_x_set(cube_lat, cfgs_family(d)))
        comp = set(range(1 << d)) - X
        A, B = (X, comp) if len(X) >= len(comp) else (comp, X)
    else:
        A, B = {0}, set()
    # cube vertex mask -> element of W_J
    cube = []
    for mask in range(1 << d):
        w = 0
        for t in range(d):
            if mask >> t & 1:
                w = sys_.right_mul(w, J[t])
        cube.append(w)
    even = sum(c for l, c in enumerate(q.layer_sizes) if l % 2 == 0)
    odd = sum(q.layer_sizes) - even
    big_parity = 0 if even >= odd else 1
    G = sys_.group
    chosen = []
    for i in q.reps:
        side = A if sys_.lengths[i] % 2 == big_parity else B
        iinv = G.inv(i)
        for mask in side:
            chosen.append(G.mul(cube[mask], iinv))
    g = coxeter_cayley(sys_)
    cert = make_certificate(g, "low-degree-set", k, chosen)
    cert.note = f"J={[j + 1 for j in J]}"
    return cert


# ------------------------------------------------------------------ B_n / D_n

def bn_dn_graph(family: str, n: int) -> tuple[grp.FiniteGroup, Graph]:
    if family == "B" and not 3 <= n <= 5:
        raise CoxeterError("B_n needs 3 <= n <= 5")
    if family == "D" and not 4 <= n <= 5:
        raise CoxeterError("D_n needs 4 <= n <= 5")
    if family not in ("B", "D"):
        raise CoxeterError("family must be B or D")
    G = grp.signed(n, even=family == "D")
    gens = [G.find(x) for x in grp.signed_generators(n, even=family == "D")]
    return G, grp.cayley_graph(G, gens, name=f"signed-coxeter:{family}{n}")


def bn_dn_subset(family: str, n: int) -> tuple[Graph, Certificate]:
    """K (inside the copy of A_{n-1}) plus the parity-mismatch class off it."""
    G, g = bn_dn_graph(family, n)
    a_sys = coxeter_system(f"A{n - 1}")
    K_elems = cube_like_subset(a_sys).members
    ident = tuple(range(n))
    chosen = []
    for w in K_elems:
        p = ident
        for s in a_sys.word(w):
            p = grp.perm_mul(p, grp.perm_from_cycles(n, [s + 1, s + 2]))
        chosen.append(G.find((0, p)))
    for v, (A, p) in enumerate(G.elements):
        par_a = bin(A).count("1") % 2
        par_p = 0 if grp.perm_sign(p) == 1 else 1
        if A and par_a != par_p:
            chosen.append(v)
    k = _ceil_sqrt(-(-(n - 1) // 2)) + 1
    return g, make_certificate(g, "low-degree-set", k, chosen)


# ------------------------------------------------------- arc diagram parity

def arc_diagram_parities(n: int) -> dict[tuple, set[int]]:
    """For the chains 1<2, 3<4, ... in {1..n}: arc diagram -> parities seen.

    A linear extension is a word in which 2t-1 precedes 2t; its diagram is
    the unlabeled set of position pairs occupied by the chains.
    """
    out: dict[tuple, set[int]] = {}
    m = n // 2
    for word in itertools.permutations(range(1, n + 1)):
        pos = {x: i for i, x in enumerate(word)}
        if any(pos[2 * t - 1] > pos[2 * t] for t in range(1, m + 1)):
            continue
        diagram = tuple(sorted((pos[2 * t - 1], pos[2 * t]) for t in range(1, m + 1)))
        inv = sum(1 for a, b in itertools.combinations(word, 2) if a > b)
        out.setdefault(diagram, set()).add(inv % 2)
    return out
