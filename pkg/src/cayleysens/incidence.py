"""Projective planes over small fields, polarity and Levi graphs, LPS graphs."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .graph import Graph, bipartition, girth, kronecker_double_cover
from .groups import FiniteGroup, cayley_graph, dihedral, from_generators

SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9)
# (characteristic, degree, low coefficients of the monic irreducible polynomial)
_FIELD_MODELS = {4: (2, 2, (1, 1)), 8: (2, 3, (1, 1, 0)), 9: (3, 2, (1, 0))}
LPS_MAX_ORDER = 3000


class IncidenceError(ValueError):
    pass


# --------------------------------------------------------------------- fields

@dataclass(frozen=True)
class GF:
    """GF(q) on 0..q-1 with table arithmetic.

    For q = p^e the integer x encodes the polynomial sum_k digit_k(x) t^k in
    base p, reduced modulo the fixed irreducible polynomial.
    """

    q: int
    p: int
    add: tuple
    mul: tuple
    neg: tuple
    inv: tuple

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    def dot(self, x, y) -> int:
        s = 0
        for a, b in zip(x, y):
            s = self.add[s][self.mul[a][b]]
        return s


def _digits(x: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        out.append(x % p)
        x //= p
    return out


def _undigits(ds, p: int) -> int:
    return sum(d * p ** k for k, d in enumerate(ds))


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    if q not in SUPPORTED_Q:
        raise IncidenceError(f"unsupported field order {q}; choose from {SUPPORTED_Q}")
    if q in _FIELD_MODELS:
        p, e, low = _FIELD_MODELS[q]
    else:
        p, e, low = q, 1, (0,)
    add = [[0] * q for _ in range(q)]
    mul = [[0] * q for _ in range(q)]
    for a in range(q):
        da = _digits(a, p, e)
        for b in range(q):
            db = _digits(b, p, e)
            add[a][b] = _undigits([(x + y) % p for x, y in zip(da, db)], p)
            prod = [0] * (2 * e - 1)
            for i, x in enumerate(da):
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
            # reduce with t^e = -(low coefficients)
            for k in range(len(prod) - 1, e - 1, -1):
                c = prod[k]
                if c:
                    prod[k] = 0
                    for i, lc in enumerate(low):
                        prod[k - e + i] = (prod[k - e + i] - c * lc) % p
            mul[a][b] = _undigits(prod[:e], p)
    neg = [next(b for b in range(q) if add[a][b] == 0) for a in range(q)]
    inv = [0] + [next(b for b in range(q) if mul[a][b] == 1) for a in range(1, q)]
    f = GF(q, p, tuple(map(tuple, add)), tuple(map(tuple, mul)), tuple(neg), tuple(inv))
    _check_field(f)
    return f


def _check_field(f: GF) -> None:
    q = f.q
    for a in range(q):
        if f.add[a][0] != a or f.mul[a][1] != a:
            raise ArithmeticError(f"GF({q}) identity failure")
        if a and f.mul[a][f.inv[a]] != 1:
            raise ArithmeticError(f"GF({q}) inverse failure")
        for b in range(q):
            for c in range(q):
                if f.mul[a][f.add[b][c]] != f.add[f.mul[a][b]][f.mul[a][c]]:
                    raise ArithmeticError(f"GF({q}) distributivity failure")


# --------------------------------------------------------------------- planes

def normalize(f: GF, v) -> tuple:
    """Scale so the first nonzero coordinate is 1."""
    for a in v:
        if a:
            s = f.inv[a]
            return tuple(f.mul[s][x] for x in v)
    raise ValueError("zero vector has no projective point")


@dataclass
class ProjectivePlane:
    q: int
    field: GF
    points: list[tuple]
    index: dict
    lines: list[frozenset]

    @property
    def size(self) -> int:
        return len(self.points)

    def incident(self, point: int, line: int) -> bool:
        return self.field.dot(self.points[point], self.points[line]) == 0

    def check_axioms(self) -> list[str]:
        """Exhaustive check of the counting and incidence axioms."""
        q, n = self.q, self.size
        bad = []
        if n != q * q + q + 1:
            bad.append(f"{n} points, expected {q * q + q + 1}")
        if any(len(L) != q + 1 for L in self.lines):
            bad.append("line with wrong point count")
        on = [0] * n
        for L in self.lines:
            for x in L:
                on[x] += 1
        if any(c != q + 1 for c in on):
            bad.append("point on wrong number of lines")
        common = {}
        for li, L in enumerate(self.lines):
            for x, y in itertools.combinations(sorted(L), 2):
                common[x, y] = common.get((x, y), 0) + 1
        if len(common) != n * (n - 1) // 2 or any(c != 1 for c in common.values()):
            bad.append("two points do not span exactly one line")
        for L, M in itertools.combinations(self.lines, 2):
            if len(L & M) != 1:
                bad.append("two lines do not meet in exactly one point")
                break
        return bad


@lru_cache(maxsize=None)
def projective_plane(q: int) -> ProjectivePlane:
    """P(2,q); line ``j`` is the set of points orthogonal to point ``j``."""
    f = field(q)
    points = [v for v in itertools.product(range(q), repeat=3)
              if any(v) and normalize(f, v) == v]
    index = {v: i for i, v in enumerate(points)}
    lines = [frozenset(i for i, x in enumerate(points) if f.dot(x, y) == 0)
             for y in points]
    return ProjectivePlane(q, f, points, index, lines)


def polarity_graph(q: int) -> Graph:
    """Points of P(2,q), x ~ y iff x.y = 0, loops at absolute points."""
    P = projective_plane(q)
    edges, loops = set(), set()
    for j, L in enumerate(P.lines):
        for i in L:
            if i == j:
                loops.add(i)
            elif i < j:
                edges.add((i, j))
    return Graph(P.size, edges, loops=loops, meta=f"polarity_q{q}")


def levi_graph(q: int) -> Graph:
    """Point-line incidence graph: points 0..N-1, line j is vertex N + j.

    With lines indexed by their normal vectors this coincides with the
    Kronecker double cover of the polarity graph, vertex for vertex.
    """
    P = projective_plane(q)
    N = P.size
    edges = {(i, N + j) for j, L in enumerate(P.lines) for i in L}
    return Graph(2 * N, edges, meta=f"levi_q{q}", vertex_transitive=True)


# ---------------------------------------------------------- difference sets

def perfect_difference_set(q: int) -> list[int] | None:
    """Lexicographically first planar difference set mod q^2+q+1 containing 0, 1.

    Every planar difference set has a translate containing 0 and 1 (the
    difference 1 occurs exactly once), so this search is exhaustive.
    """
    N = q * q + q + 1
    k = q + 1
    chosen = [0, 1]
    used = {1, N - 1}

    def rec(start):
        if len(chosen) == k:
            return True
        for x in range(start, N):
            diffs = []
            ok = True
            for y in chosen:
                for dd in ((x - y) % N, (y - x) % N):
                    if dd in used or dd in diffs:
                        ok = False
                        break
                    diffs.append(dd)
                if not ok:
                    break
            if not ok:
                continue
            # every later element exceeds x, so enough room must remain
            if N - x < k - len(chosen):
                return False
            chosen.append(x)
            used.update(diffs)
            if rec(x + 1):
                return True
            chosen.pop()
            used.difference_update(diffs)
        return False

    return list(chosen) if rec(2) else None


def is_difference_set(D, N: int) -> bool:
    counts = [0] * N
    for a in D:
        for b in D:
            if a != b:
                counts[(a - b) % N] += 1
    return all(c == 1 for c in counts[1:])


# Singer cycle: GF(q^3) as GF(q)[t]/(cubic), elements as coordinate triples

def _cubic(f: GF) -> tuple:
    """First monic cubic t^3 + c2 t^2 + c1 t + c0 without roots in GF(q)."""
    q = f.q
    for c0 in range(1, q):
        for c1 in range(q):
            for c2 in range(q):
                roots = False
                for x in range(q):
                    x2 = f.mul[x][x]
                    val = f.add[f.mul[x2][x]][f.mul[c2][x2]]
                    val = f.add[f.add[val][f.mul[c1][x]]][c0]
                    if val == 0:
                        roots = True
                        break
                if not roots:
                    return (c0, c1, c2)
    raise ArithmeticError("no irreducible cubic found")


def _ext_mul(f: GF, cubic, a, b) -> tuple:
    prod = [0] * 5
    for i in range(3):
        for j in range(3):
            prod[i + j] = f.add[prod[i + j]][f.mul[a[i]][b[j]]]
    for k in (4, 3):
        c = prod[k]
        if c:
            prod[k] = 0
            for i in range(3):
                prod[k - 3 + i] = f.sub(prod[k - 3 + i], f.mul[c][cubic[i]])
    return tuple(prod[:3])


def _ext_trace(f: GF, cubic, z) -> int:
    """Trace of multiplication by z on the basis 1, t, t^2."""
    s = 0
    basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    for k, e in enumerate(basis):
        s = f.add[s][_ext_mul(f, cubic, z, e)[k]]
    return s


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass
class SingerData:
    cubic: tuple
    omega: tuple
    powers: list[tuple]  # omega^i for i in 0..N-1
    diff_set: list[int]  # {i : Tr(omega^i) = 0}


def singer_cycle(q: int) -> SingerData:
    f = field(q)
    N = q * q + q + 1
    cubic = _cubic(f)
    one = (1, 0, 0)

    def in_base(z):
        return z[1] == 0 and z[2] == 0

    for cand in itertools.product(range(q), repeat=3):
        if in_base(cand):
            continue
        pw = [one]
        for _ in range(N):
            pw.append(_ext_mul(f, cubic, pw[-1], cand))
        if not in_base(pw[N]):
            continue
        if any(in_base(pw[N // r]) for r in _prime_factors(N)):
            continue
        powers = pw[:N]
        D = [i for i, z in enumerate(powers) if _ext_trace(f, cubic, z) == 0]
        return SingerData(cubic, cand, powers, D)
    raise ArithmeticError("no Singer generator found")


@dataclass
class DihedrantLevi:
    q: int
    diff_set: list[int]
    graph: Graph
    levi: Graph
    mapping: list[int]  # dihedrant vertex -> levi vertex
    multiplier: int
    shift: int

    def verify(self) -> bool:
        """Edge-set equality after relabeling, independent of the construction."""
        if sorted(self.mapping) != list(range(self.levi.n)):
            return False
        image = {tuple(sorted((self.mapping[u], self.mapping[v]))) for u, v in self.graph.edges}
        return image == set(self.levi.edges) and len(image) == self.graph.m


def dihedrant_levi(q: int) -> DihedrantLevi:
    """Cay(D_N, {a^d b : d in D}) for a planar difference set D, with a bijection to L_q.

    Vertices a^i and a^j b are adjacent iff j - i lies in D.  The Singer
    difference set E = {i : Tr(w^i) = 0} gives the incidence "point w^u lies
    on line l_v iff u - v in E".  The search finds a multiplier t and shift s
    with D = tE + s; then a^i -> point w^(-i/t) and a^j b -> line
    l_(-(j-s)/t) is an isomorphism.
    """
    if q not in SUPPORTED_Q or q > 8:
        raise IncidenceError(f"dihedrant_levi supports q in {SUPPORTED_Q[:-1]}")
    N = q * q + q + 1
    D = perfect_difference_set(q)
    if D is None or not is_difference_set(D, N):
        raise ArithmeticError(f"no perfect difference set found modulo {N}")
    grp = dihedral(N)
    conn = [grp.find((d, 1)) for d in D]
    g = cayley_graph(grp, conn, name=f"dihedrant_levi_q{q}")

    sg = singer_cycle(q)
    Dset = set(D)
    found = None
    for t in range(1, N):
        if math.gcd(t, N) != 1:
            continue
        tE = [(t * e) % N for e in sg.diff_set]
        for s in range(N):
            if {(x + s) % N for x in tE} == Dset:
                found = (t, s)
                break
        if found:
            break
    if found is None:
        raise ArithmeticError("difference set is not equivalent to the Singer set")
    t, s = found
    tinv = pow(t, -1, N)

    P = projective_plane(q)
    f = P.field
    levi = levi_graph(q)

    def point_of(u):
        return P.index[normalize(f, sg.powers[u % N])]

    def line_of(v):
        # l_v = {x : Tr(w^-v x) = 0}; the functional has coefficients Tr(c t^k)
        c = sg.powers[(-v) % N]
        basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        normal = tuple(_ext_trace(f, sg.cubic, _ext_mul(f, sg.cubic, c, e)) for e in basis)
        return N + P.index[normalize(f, normal)]

    mapping = [0] * (2 * N)
    for x in range(grp.order):
        i, b = grp.elements[x]
        if b == 0:
            mapping[x] = point_of(-tinv * i)
        else:
            mapping[x] = line_of(-tinv * (i - s))
    return DihedrantLevi(q, D, g, levi, mapping, t, s)


# ------------------------------------------------------------------------ LPS

def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def lps_quadruples(p: int) -> list[tuple]:
    """Solutions of a0^2+a1^2+a2^2+a3^2 = p with a0 > 0 odd, a1..a3 even."""
    r = math.isqrt(p)
    out = []
    for a0 in range(1, r + 1, 2):
        for a1 in range(-r, r + 1):
            for a2 in range(-r, r + 1):
                for a3 in range(-r, r + 1):
                    if (a1 | a2 | a3) & 1 == 0 and a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3 == p:
                        out.append((a0, a1, a2, a3))
    return out


def _pgl_normalize(m, q):
    for a in m:
        if a % q:
            s = pow(a, -1, q)
            return tuple((x * s) % q for x in m)
    raise ValueError("zero matrix")


def _pgl_mul(q):
    def op(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return _pgl_normalize(((a * e + b * g) % q, (a * f + b * h) % q,
                               (c * e + d * g) % q, (c * f + d * h) % q), q)
    return op


def _pgl_inv(q):
    def inv(x):
        a, b, c, d = x
        return _pgl_normalize((d, -b % q, -c % q, a), q)
    return inv


def _check_lps(p: int, q: int) -> None:
    if not (_is_prime(p) and _is_prime(q)) or p == q:
        raise IncidenceError("p and q must be distinct primes")
    if p % 4 != 1 or q % 4 != 1:
        raise IncidenceError("p and q must both be 1 mod 4")
    order = q * (q * q - 1) // (1 if legendre(p, q) == -1 else 2)
    # (13, 5) is admitted as a small test instance although q < 2 sqrt(p)
    if q * q <= 4 * p and (p, q) != (13, 5):
        raise IncidenceError("need q > 2 sqrt(p)")
    if order > LPS_MAX_ORDER and (p, q) != (5, 13):
        raise IncidenceError(f"group order {order} exceeds {LPS_MAX_ORDER}")


@dataclass
class LPSGraph:
    p: int
    q: int
    legendre: int
    graph: Graph
    group: FiniteGroup

    @property
    def bipartite(self) -> bool:
        return self.legendre == -1

    def girth_bound(self) -> float:
        p, q = self.p, self.q
        if self.bipartite:
            return 4 * math.log(q, p) - math.log(4, q)
        return 2 * math.log(q, p)

    def girth(self) -> float:
        return girth(self.graph, [0])


def lps_graph(p: int, q: int) -> LPSGraph:
    """X^{p,q}: Cayley graph of PGL(2,q) or PSL(2,q) on the p+1 quaternion generators."""
    _check_lps(p, q)
    i = next(x for x in range(q) if (x * x + 1) % q == 0)
    gens = []
    for a0, a1, a2, a3 in lps_quadruples(p):
        m = ((a0 + i * a1) % q, (a2 + i * a3) % q, (-a2 + i * a3) % q, (a0 - i * a1) % q)
        gens.append(_pgl_normalize(m, q))
    ident = (1, 0, 0, 1)
    if len(set(gens)) != p + 1 or ident in gens:
        raise IncidenceError("generators collapse modulo q")
    leg = legendre(p, q)
    name = f"{'PGL' if leg == -1 else 'PSL'}(2,{q})"
    grp = from_generators(name, ident, gens, _pgl_mul(q), _pgl_inv(q),
                          lambda m: "[" + " ".join(map(str, m)) + "]")
    expect = q * (q * q - 1) // (1 if leg == -1 else 2)
    if grp.order != expect:
        raise ArithmeticError(f"generated group has order {grp.order}, expected {expect}")
    conn = [grp.find(x) for x in gens]
    g = cayley_graph(grp, conn, name=f"lps_p{p}_q{q}")
    if (bipartition(g) is not None) != (leg == -1):
        raise ArithmeticError("bipartiteness disagrees with the Legendre symbol")
    return LPSGraph(p, q, leg, g, grp)


def y_graph(p: int, q: int) -> Graph:
    """Bipartite LPS graph: X itself, or its Kronecker double cover when (p|q) = 1."""
    X = lps_graph(p, q)
    if X.bipartite:
        return X.graph
    return kronecker_double_cover(X.graph)


def y_mixing_bound(p: int) -> float:
    return (p + 1) / 2 - math.sqrt(p)
