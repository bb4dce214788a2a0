"""Simple graphs, products and covers, certificates and their file formats.

Degree convention: a loop adds 1 to its vertex's row sum (``Graph.degree``,
matching the adjacency diagonal used for spectra) but 2 to the induced degree
reported by :func:`induced_max_degree`.  Loops only occur in polarity graphs,
which are never certificate targets.
"""

from __future__ import annotations

import hashlib
import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence


@dataclass(frozen=True)
class CayleyData:
    group: object
    conn: frozenset


class Graph:
    """Immutable undirected graph on ``0..n-1``."""

    __slots__ = ("n", "edges", "loops", "meta", "vertex_transitive", "cayley",
                 "_nbrs", "_bits", "_fp")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), loops: Iterable[int] = (),
                 meta: str = "", vertex_transitive: bool = False, cayley: CayleyData | None = None):
        es = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError("use loops= for loop edges")
            es.add((u, v) if u < v else (v, u))
        ls = sorted(set(loops))
        for v in ls:
            if not 0 <= v < n:
                raise ValueError(f"loop {v} out of range")
        self.n = n
        self.edges = tuple(sorted(es))
        self.loops = tuple(ls)
        self.meta = meta
        self.vertex_transitive = vertex_transitive
        self.cayley = cayley
        nb = [[] for _ in range(n)]
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        self._nbrs = tuple(tuple(sorted(x)) for x in nb)
        self._bits = None
        self._fp = None

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)}, meta={self.meta!r})"

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._nbrs[v]

    @property
    def adjacency_lists(self) -> tuple[tuple[int, ...], ...]:
        return self._nbrs

    @property
    def bits(self) -> list[int]:
        """Adjacency rows as int bitsets, built on first use."""
        if self._bits is None:
            rows = []
            for nb in self._nbrs:
                b = 0
                for u in nb:
                    b |= 1 << u
                rows.append(b)
            self._bits = rows
        return self._bits

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return u in set(self.loops)
        return self.bits[u] >> v & 1 == 1

    def degree(self, v: int) -> int:
        return len(self._nbrs[v]) + (1 if v in self._loopset() else 0)

    def _loopset(self) -> frozenset:
        return frozenset(self.loops)

    def degrees(self) -> list[int]:
        ls = self._loopset()
        return [len(nb) + (v in ls) for v, nb in enumerate(self._nbrs)]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    def fingerprint(self) -> str:
        if self._fp is None:
            self._fp = hashlib.sha256(canonical_serialize(self)).hexdigest()
        return self._fp

    def relabeled(self, perm: Sequence[int], meta: str | None = None) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges),
                     (perm[v] for v in self.loops), meta=meta or self.meta,
                     vertex_transitive=self.vertex_transitive)

    def induced(self, verts: Sequence[int]) -> "Graph":
        pos = {v: i for i, v in enumerate(verts)}
        es = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return Graph(len(verts), es, (pos[v] for v in self.loops if v in pos))


# ------------------------------------------------------------------ basics

def induced_max_degree(g: Graph, s: Iterable[int]) -> int:
    s = set(s)
    for v in s:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    loops = g._loopset()
    best = 0
    for v in s:
        d = sum(1 for u in g.neighbors(v) if u in s) + (2 if v in loops else 0)
        best = max(best, d)
    return best


def is_independent(g: Graph, s: Iterable[int]) -> bool:
    return induced_max_degree(g, s) == 0


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for r in range(g.n):
        if seen[r]:
            continue
        comp = [r]
        seen[r] = True
        dq = deque([r])
        while dq:
            v = dq.popleft()
            for u in g.neighbors(v):
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    dq.append(u)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def bipartition(g: Graph) -> tuple[list[int], list[int]] | None:
    """2-colouring (class of each component root = 0), or None if not bipartite."""
    if g.loops:
        return None
    color = [-1] * g.n
    for r in range(g.n):
        if color[r] >= 0:
            continue
        color[r] = 0
        dq = deque([r])
        while dq:
            v = dq.popleft()
            for u in g.neighbors(v):
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    dq.append(u)
                elif color[u] == color[v]:
                    return None
    return ([v for v in range(g.n) if color[v] == 0],
            [v for v in range(g.n) if color[v] == 1])


def bfs_distances(g: Graph, root: int) -> list[int]:
    dist = [-1] * g.n
    dist[root] = 0
    dq = deque([root])
    while dq:
        v = dq.popleft()
        for u in g.neighbors(v):
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                dq.append(u)
    return dist


def girth(g: Graph, roots: Iterable[int] | None = None) -> float:
    """Shortest cycle length through any of ``roots`` (all vertices by default).

    For vertex-transitive graphs one root suffices.  Loops are ignored.
    """
    if roots is None:
        roots = [0] if g.vertex_transitive and g.n else range(g.n)
    best = math.inf
    for r in roots:
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[r] = 0
        dq = deque([r])
        while dq:
            v = dq.popleft()
            if 2 * dist[v] + 1 >= best:
                break
            for u in g.neighbors(v):
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    parent[u] = v
                    dq.append(u)
                elif parent[v] != u:
                    best = min(best, dist[u] + dist[v] + 1)
    return best


# ----------------------------------------------------------------- families

def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)], meta=f"C{n}", vertex_transitive=True)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)], meta=f"P{n}")


def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2), meta=f"K{n}", vertex_transitive=True)


def hypercube_graph(d: int) -> Graph:
    """Q_d on bitmasks ``0..2^d-1``."""
    n = 1 << d
    es = [(v, v | (1 << b)) for v in range(n) for b in range(d) if not v >> b & 1]
    return Graph(n, es, meta=f"Q{d}", vertex_transitive=True)


def generalized_petersen(n: int, k: int) -> Graph:
    """G(n,k): outer i ~ i+1, spokes i ~ n+i, inner n+i ~ n+i+k."""
    es = []
    for i in range(n):
        es.append((i, (i + 1) % n))
        es.append((i, n + i))
        es.append((n + i, n + (i + k) % n))
    return Graph(2 * n, es, meta=f"G({n},{k})", vertex_transitive=True)


def petersen_graph() -> Graph:
    return generalized_petersen(5, 2)


def lexicographic_product(g: Graph, h: Graph) -> Graph:
    """G[H]: (u,a) ~ (v,b) iff u~v in G, or u=v and a~b in H."""
    nh = h.n
    es = []
    for u, v in g.edges:
        for a in range(nh):
            for b in range(nh):
                es.append((u * nh + a, v * nh + b))
    for u in range(g.n):
        for a, b in h.edges:
            es.append((u * nh + a, u * nh + b))
    return Graph(g.n * nh, es, meta=f"{g.meta}[{h.meta}]",
                 vertex_transitive=g.vertex_transitive and h.vertex_transitive)


def empty_graph(n: int) -> Graph:
    return Graph(n, (), meta=f"E{n}", vertex_transitive=True)


# ------------------------------------------------------- products and covers

def kronecker_double_cover(g: Graph) -> Graph:
    """G x K_2 with (v, c) at index ``v + c*n``; loops become matching edges."""
    n = g.n
    es = [(u, v + n) for u, v in g.edges] + [(v, u + n) for u, v in g.edges]
    es += [(v, v + n) for v in g.loops]
    return Graph(2 * n, es, meta=f"{g.meta}xK2", vertex_transitive=g.vertex_transitive)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """G □ H with (u, u') at index ``u*|V(H)| + u'``."""
    nh = h.n
    es = [(u * nh + a, u * nh + b) for u in range(g.n) for a, b in h.edges]
    es += [(u * nh + a, v * nh + a) for u, v in g.edges for a in range(nh)]
    return Graph(g.n * nh, es, meta=f"{g.meta}□{h.meta}",
                 vertex_transitive=g.vertex_transitive and h.vertex_transitive)


def is_covering_map(cover: Graph, base: Graph, fiber_map) -> bool:
    """Surjective homomorphism that is bijective on each edge neighbourhood."""
    phi = [fiber_map(v) if callable(fiber_map) else fiber_map[v] for v in range(cover.n)]
    if any(not 0 <= x < base.n for x in phi):
        return False
    if set(phi) != set(range(base.n)):
        return False
    bloops = base._loopset()
    for v in range(cover.n):
        img = sorted(phi[u] for u in cover.neighbors(v))
        if v in cover._loopset():
            img.append(phi[v])
        want = list(base.neighbors(phi[v]))
        if phi[v] in bloops:
            want.append(phi[v])
        if img != sorted(want):
            return False
    return True


def find_isomorphism(g: Graph, h: Graph) -> list[int] | None:
    """Small backtracking search for an isomorphism ``g -> h`` (n <= ~64)."""
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return None
    n = g.n
    order = []
    seen = set()
    for comp in components(g):
        dq = deque([comp[0]])
        seen.add(comp[0])
        while dq:
            v = dq.popleft()
            order.append(v)
            for u in g.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    dq.append(u)
    gdeg, hdeg = g.degrees(), h.degrees()
    hb = h.bits
    mapping = [-1] * n
    used = [False] * n

    def consistent(v, w):
        if gdeg[v] != hdeg[w]:
            return False
        for u in g.neighbors(v):
            if mapping[u] >= 0 and not hb[w] >> mapping[u] & 1:
                return False
        cnt = sum(1 for u in g.neighbors(v) if mapping[u] >= 0)
        cnt_h = sum(1 for x in range(n) if used[x] and hb[w] >> x & 1)
        return cnt == cnt_h

    def rec(i):
        if i == n:
            return True
        v = order[i]
        mapped_nb = [mapping[u] for u in g.neighbors(v) if mapping[u] >= 0]
        cands = h.neighbors(mapped_nb[0]) if mapped_nb else range(n)
        for w in cands:
            if not used[w] and consistent(v, w):
                mapping[v] = w
                used[w] = True
                if rec(i + 1):
                    return True
                mapping[v] = -1
                used[w] = False
        return False

    return list(mapping) if rec(0) else None


def is_isomorphism(g: Graph, h: Graph, perm: Sequence[int]) -> bool:
    if g.n != h.n or sorted(perm) != list(range(g.n)):
        return False
    return canonical_serialize(g.relabeled(perm)) == canonical_serialize(h)


# ------------------------------------------------------------- serialization

def canonical_serialize(g: Graph) -> bytes:
    lines = [f"graph {g.n} {g.m}\n"]
    lines += [f"{u} {v}\n" for u, v in g.edges]
    lines += [f"loop {v}\n" for v in g.loops]
    return "".join(lines).encode("ascii")


def parse_graph(data: bytes | str) -> Graph:
    text = data.decode("ascii") if isinstance(data, bytes) else data
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty graph file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "graph":
        raise ValueError(f"bad graph header {lines[0]!r}")
    n, m = int(head[1]), int(head[2])
    edges, loops = [], []
    for ln in lines[1:]:
        parts = ln.split()
        if not parts:
            continue
        if parts[0] == "loop":
            loops.append(int(parts[1]))
        else:
            edges.append((int(parts[0]), int(parts[1])))
    if len(edges) != m:
        raise ValueError(f"header says {m} edges, found {len(edges)}")
    return Graph(n, edges, loops)


def write_graph(g: Graph, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(canonical_serialize(g))
    return path


def read_graph(path: str | Path) -> Graph:
    g = parse_graph(Path(path).read_bytes())
    g.meta = Path(path).stem
    return g


def to_dot(g: Graph, highlight: Iterable[int] = ()) -> str:
    hl = set(highlight)
    out = ["graph G {"]
    for v in range(g.n):
        if v in hl:
            out.append(f"  {v} [style=filled, fillcolor=gray];")
    out += [f"  {u} -- {v};" for u, v in g.edges]
    out += [f"  {v} -- {v};" for v in g.loops]
    out.append("}")
    return "\n".join(out) + "\n"


# -------------------------------------------------------------- certificates

KINDS = ("low-degree-set", "matching-set", "partition", "cube-embedding", "independent-set")


@dataclass
class Certificate:
    """A claimed vertex set (or partition / cube embedding) on a named graph.

    ``vertices`` holds one list for set kinds, ``[A, B]`` for partitions and
    the embedding (cube vertex ``x`` maps to ``vertices[0][x]``) for cubes.
    ``size`` is the cardinality, the imbalance ``|A|-|B|`` for partitions, or
    the cube dimension for embeddings.
    """

    kind: str
    k: int
    size: int
    vertices: list[list[int]]
    graph_fingerprint: str
    note: str = field(default="", compare=False)

    @property
    def members(self) -> list[int]:
        return self.vertices[0]


def make_certificate(g: Graph, kind: str, k: int, verts, size: int | None = None) -> Certificate:
    if kind == "partition":
        a, b = (sorted(x) for x in verts)
        return Certificate(kind, k, len(a) - len(b) if size is None else size, [a, b],
                           g.fingerprint())
    vs = list(verts) if kind == "cube-embedding" else sorted(verts)
    if kind == "cube-embedding" and size is None:
        size = int(math.log2(len(vs))) if vs else 0
    return Certificate(kind, k, len(vs) if size is None else size, [vs], g.fingerprint())


@dataclass
class VerificationReport:
    failures: list[str]
    measured: dict

    @property
    def valid(self) -> bool:
        return not self.failures

    def __str__(self) -> str:
        if self.valid:
            return "VALID " + " ".join(f"{k}={v}" for k, v in self.measured.items())
        return "INVALID: " + "; ".join(self.failures)


def verify_certificate(g: Graph, c: Certificate) -> VerificationReport:
    """Recheck a certificate from the graph and vertex lists alone."""
    fails: list[str] = []
    measured: dict = {}
    fp = hashlib.sha256(canonical_serialize(g)).hexdigest()
    if fp != c.graph_fingerprint:
        fails.append("fingerprint mismatch")
    if c.kind not in KINDS:
        return VerificationReport(fails + [f"unknown kind {c.kind!r}"], measured)
    adj = [set(g.neighbors(v)) for v in range(g.n)]
    loops = set(g.loops)

    def check_list(vs, tag):
        ok = True
        if any(not isinstance(v, int) or not 0 <= v < g.n for v in vs):
            fails.append(f"{tag}: vertex index out of range")
            ok = False
        if len(set(vs)) != len(vs):
            fails.append(f"{tag}: duplicate vertices")
            ok = False
        return ok

    def max_deg(vs):
        s = set(vs)
        return max((sum(1 for u in adj[v] if u in s) + 2 * (v in loops) for v in s), default=0)

    if c.kind == "partition":
        if len(c.vertices) != 2:
            return VerificationReport(fails + ["partition needs two classes"], measured)
        a, b = c.vertices
        if not (check_list(a, "A") and check_list(b, "B")):
            return VerificationReport(fails, measured)
        if set(a) & set(b) or len(a) + len(b) != g.n:
            fails.append("classes do not partition the vertex set")
        da, db = max_deg(a), max_deg(b)
        measured.update(deg_A=da, deg_B=db, imbalance=len(a) - len(b))
        if da > c.k:
            fails.append(f"degree {da} > {c.k} in A")
        if db > c.k:
            fails.append(f"degree {db} > {c.k} in B")
        if len(a) - len(b) != c.size:
            fails.append(f"imbalance {len(a) - len(b)} != claimed {c.size}")
        return VerificationReport(fails, measured)

    if len(c.vertices) != 1:
        return VerificationReport(fails + ["expected one vertex list"], measured)
    vs = c.vertices[0]
    if not check_list(vs, "set"):
        return VerificationReport(fails, measured)

    if c.kind == "cube-embedding":
        d = c.size
        if len(vs) != 1 << d:
            fails.append(f"embedding lists {len(vs)} vertices, expected {1 << d}")
            return VerificationReport(fails, measured)
        missing = sum(1 for x in range(1 << d) for b in range(d)
                      if not x >> b & 1 and vs[x | 1 << b] not in adj[vs[x]])
        present = d * (1 << max(d - 1, 0)) - missing if d else 0
        measured.update(dimension=d, cube_edges=present)
        if missing:
            fails.append(f"{missing} cube edges absent")
        return VerificationReport(fails, measured)

    deg = max_deg(vs)
    measured.update(size=len(vs), max_degree=deg)
    if len(vs) != c.size:
        fails.append(f"size {len(vs)} != claimed {c.size}")
    bound = 0 if c.kind == "independent-set" else (min(c.k, 1) if c.kind == "matching-set" else c.k)
    if c.kind == "matching-set" and c.k > 1:
        fails.append(f"matching-set with k={c.k}")
    if deg > bound:
        fails.append(f"degree {deg} > {bound}")
    return VerificationReport(fails, measured)


def format_certificate(c: Certificate) -> str:
    lines = [f"certificate {c.kind}", f"fingerprint {c.graph_fingerprint}",
             f"k {c.k}", f"size {c.size}"]
    if c.kind == "partition":
        lines += [f"A {v}" for v in c.vertices[0]]
        lines += [f"B {v}" for v in c.vertices[1]]
    else:
        lines += [str(v) for v in c.vertices[0]]
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> Certificate:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    try:
        kind = lines[0].split()[1]
        assert lines[0].split()[0] == "certificate"
        fp = lines[1].split()[1]
        assert lines[1].split()[0] == "fingerprint" and len(fp) == 64
        k = int(lines[2].split()[1])
        size = int(lines[3].split()[1])
    except (IndexError, AssertionError, ValueError) as exc:
        raise ValueError("malformed certificate header") from exc
    if kind == "partition":
        a, b = [], []
        for ln in lines[4:]:
            side, v = ln.split()
            (a if side == "A" else b).append(int(v))
        verts = [a, b]
    else:
        verts = [[int(ln) for ln in lines[4:]]]
    return Certificate(kind, k, size, verts, fp)


def write_certificate(c: Certificate, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_certificate(c))
    return path


def read_certificate(path: str | Path) -> Certificate:
    return parse_certificate(Path(path).read_text())
