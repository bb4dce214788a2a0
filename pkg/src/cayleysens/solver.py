"""Exact branch-and-bound for sigma, Delta_beta, iota_k, alpha and kappa.

Sets are Python ints used as bitsets.  Every value is certified from the
witness side; ``exact`` additionally requires that the search tree was
exhausted within the budget.  On vertex-transitive inputs the search only
explores sets containing vertex 0 (any nonempty solution can be translated
there); no deeper symmetry reduction is attempted.
"""

from __future__ import annotations

import math
import re
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import Certificate, Graph, bipartition, induced_max_degree, make_certificate


class BudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class SearchBudget:
    node_limit: int | None = None
    time_limit: float | None = None
    mode: str = "exact"

    @classmethod
    def parse(cls, text: str | None) -> "SearchBudget":
        """``"600s"``, ``"1e7nodes"`` or both separated by a comma."""
        if not text:
            return cls()
        nodes = secs = None
        for part in text.split(","):
            part = part.strip()
            m = re.fullmatch(r"([0-9.eE+]+)\s*(s|sec|nodes?)", part)
            if not m:
                raise ValueError(f"bad budget {part!r}")
            if m.group(2).startswith("s"):
                secs = float(m.group(1))
            else:
                nodes = int(float(m.group(1)))
        return cls(node_limit=nodes, time_limit=secs)


UNLIMITED = SearchBudget()


@dataclass
class SolveResult:
    value: int | None
    status: str  # exact | lower | upper | interval | infeasible
    witness: Certificate | None = None
    nodes: int = 0
    seconds: float = 0.0
    lo: int | None = None
    hi: int | None = None
    extra: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.status == "exact"

    def summary(self) -> str:
        val = self.value if self.status != "interval" else f"[{self.lo},{self.hi}]"
        return f"{val} {self.status} {self.nodes} {self.seconds:.3f}"


class _Clock:
    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.nodes = 0
        self.t0 = time.perf_counter()

    def tick(self) -> None:
        self.nodes += 1
        b = self.budget
        if b.node_limit is not None and self.nodes > b.node_limit:
            raise BudgetExceeded
        if b.time_limit is not None and self.nodes & 255 == 0:
            if time.perf_counter() - self.t0 > b.time_limit:
                raise BudgetExceeded

    @property
    def seconds(self) -> float:
        return time.perf_counter() - self.t0


def _bits(x: int):
    while x:
        b = x & -x
        yield b.bit_length() - 1
        x ^= b


def _ensure_depth(n: int) -> None:
    """The searches recurse once per decided vertex."""
    need = 4 * n + 1000
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


def _check_loopless(g: Graph) -> None:
    if g.loops:
        raise ValueError("solver requires a loop-free graph")


# ------------------------------------------------------ max low-degree set

class _LowDegreeSearch:
    """Maximum |S| with Delta(G[S]) <= k, optionally stopping at ``target``.

    Works on the complement O = V - S: every vertex outside O needs at
    least deg(v) - k neighbours in O.  Branching follows the most
    constrained vertex, and two lower bounds on the number of further O
    vertices are used (a packing of disjoint candidate sets and a greedy
    deficit-coverage count).
    """

    def __init__(self, g: Graph, k: int, clock: _Clock, target: int | None,
                 use_symmetry: bool = True):
        self.g = g
        self.n = g.n
        self.k = k
        self.adj = g.bits
        self.nbrs = g.adjacency_lists
        self.req = [max(0, len(nb) - k) for nb in self.nbrs]
        self.all = (1 << g.n) - 1
        self.clock = clock
        self.target = target
        self.best = 0
        self.best_set = 0
        self.symmetric = use_symmetry and g.vertex_transitive

    def _limit(self):
        # largest |O| still worth exploring
        if self.target is not None:
            return self.n - self.target
        return self.n - self.best - 1

    def _put_out(self, u, O, cnt):
        O |= 1 << u
        for w in self.nbrs[u]:
            cnt[w] += 1
        return O

    def _propagate(self, O, K, cnt):
        """K holds vertices committed to S.  Returns (O, K) or None."""
        adj, req = self.adj, self.req
        limit = self._limit()
        changed = True
        while changed:
            changed = False
            if O.bit_count() > limit:
                return None
            und = self.all & ~(O | K)
            for v in range(self.n):
                d = req[v] - cnt[v]
                if d <= 0 or O >> v & 1:
                    continue
                cand = adj[v] & und
                c = cand.bit_count()
                if K >> v & 1:
                    if c < d:
                        return None
                    if c == d:
                        for u in _bits(cand):
                            O = self._put_out(u, O, cnt)
                        changed = True
                        break
                elif c < d:
                    O = self._put_out(v, O, cnt)
                    changed = True
                    break
        return O, K

    def _lower(self, O, K, und, cnt):
        """Lower bound on the number of further vertices O still needs."""
        adj, req = self.adj, self.req
        used = 0
        pack = 0
        total = 0
        deficient = 0
        for v in _bits(self.all & ~O):
            d = req[v] - cnt[v]
            if d <= 0:
                continue
            deficient |= 1 << v
            total += d
            if K >> v & 1:
                cand = adj[v] & und
                need = d
            else:
                cand = (adj[v] & und) | (1 << v)
                need = 1
            if not cand & used:
                used |= cand
                pack += need
        if not total:
            return 0
        gains = []
        for u in _bits(und):
            gu = (adj[u] & deficient).bit_count()
            if deficient >> u & 1:
                gu += req[u] - cnt[u]
            gains.append(gu)
        gains.sort(reverse=True)
        acc = cover = 0
        for gu in gains:
            if acc >= total:
                break
            acc += gu
            cover += 1
        if acc < total:
            return self.n + 1
        return max(pack, cover)

    def _rec(self, O, K, cnt):
        self.clock.tick()
        cnt = cnt[:]
        st = self._propagate(O, K, cnt)
        if st is None:
            return False
        O, K = st
        und = self.all & ~(O | K)
        adj, req = self.adj, self.req
        # most constrained deficient vertex
        pick, pick_slack = -1, None
        for v in _bits(self.all & ~O):
            d = req[v] - cnt[v]
            if d <= 0:
                continue
            cand = adj[v] & und
            slack = cand.bit_count() - d + (0 if K >> v & 1 else 1)
            if pick_slack is None or slack < pick_slack:
                pick, pick_slack = v, slack
        if pick < 0:
            size = self.n - O.bit_count()
            if size > self.best:
                self.best, self.best_set = size, self.all & ~O
            return self.target is not None and self.best >= self.target
        if O.bit_count() + self._lower(O, K, und, cnt) > self._limit():
            return False
        v = pick
        cand = adj[v] & und
        if not K >> v & 1:
            cand |= 1 << v
        deficient = 0
        for w in _bits(self.all & ~O):
            if req[w] > cnt[w]:
                deficient |= 1 << w
        u = max(_bits(cand), key=lambda x: (adj[x] & deficient).bit_count()
                + (1 if deficient >> x & 1 else 0))
        cnt2 = cnt[:]
        O2 = self._put_out(u, O, cnt2)
        if self._rec(O2, K, cnt2):
            return True
        if self.target is None and O.bit_count() >= self._limit() + 1:
            return False
        return self._rec(O, K | (1 << u), cnt)

    def greedy(self):
        """Greedy incumbent: repeatedly move the worst violator out of S."""
        S = self.all
        adj, k = self.adj, self.k
        while True:
            worst, wd = -1, k
            for v in _bits(S):
                dv = (adj[v] & S).bit_count()
                if dv > wd:
                    worst, wd = v, dv
            if worst < 0:
                break
            S &= ~(1 << worst)
        if S.bit_count() > self.best:
            self.best, self.best_set = S.bit_count(), S

    def run(self):
        _ensure_depth(self.n)
        if self.n == 0:
            return True
        K = 1 if self.symmetric else 0
        return self._rec(0, K, [0] * self.n)

    def root_bound(self):
        cnt = [0] * self.n
        return self.n - self._lower(0, 0, self.all, cnt)


def _set_from_bits(x: int) -> list[int]:
    return list(_bits(x))


def max_low_degree_set(g: Graph, k: int, budget: SearchBudget = UNLIMITED,
                       target: int | None = None) -> SolveResult:
    """Maximum cardinality of a vertex set inducing max degree <= k.

    With ``target`` the search stops as soon as a set of that size is found;
    the result is then a ``lower`` bound (or ``exact`` if the target equals
    the bound), and a refuted target returns ``upper`` ``target - 1``.
    """
    _check_loopless(g)
    if k < 0:
        raise ValueError("k must be non-negative")
    clock = _Clock(budget)
    s = _LowDegreeSearch(g, k, clock, target)
    kind = "independent-set" if k == 0 else "low-degree-set"
    if target is None:
        s.greedy()
    try:
        s.run()
        status = "exact"
    except BudgetExceeded:
        status = "interval"
    witness = make_certificate(g, kind, k, _set_from_bits(s.best_set))
    res = SolveResult(s.best, status, witness, clock.nodes, clock.seconds)
    if target is not None:
        if s.best >= target:
            res.status = "lower"
        elif status == "exact":
            res.status = "upper"
            res.value = target - 1
            res.hi = target - 1
        res.lo = s.best
        return res
    if status == "interval":
        res.lo = s.best
        res.hi = s.root_bound()
    return res


# ---------------------------------------------------------- independence

def _max_matching(g: Graph, left: list[int]) -> dict[int, int]:
    """Hopcroft-Karp style augmenting paths; returns mate map (both sides)."""
    mate: dict[int, int] = {}
    leftset = set(left)

    def augment(v, seen):
        for u in g.neighbors(v):
            if u in seen:
                continue
            seen.add(u)
            if u not in mate or augment(mate[u], seen):
                mate[v] = u
                mate[u] = v
                return True
        return False

    _ensure_depth(g.n)
    for v in left:
        if v not in mate:
            augment(v, set())
    return {v: u for v, u in mate.items() if v in leftset or u in leftset}


def _konig_independent_set(g: Graph, parts) -> list[int]:
    left, right = parts
    mate = _max_matching(g, left)
    # Konig: Z = vertices reachable from unmatched left by alternating paths
    leftset = set(left)
    free = [v for v in left if v not in mate]
    seen = set(free)
    stack = list(free)
    while stack:
        v = stack.pop()
        if v in leftset:
            for u in g.neighbors(v):
                if u not in seen and mate.get(v) != u:
                    seen.add(u)
                    stack.append(u)
        else:
            w = mate.get(v)
            if w is not None and w not in seen:
                seen.add(w)
                stack.append(w)
    cover = [v for v in left if v not in seen] + [v for v in right if v in seen]
    cov = set(cover)
    return [v for v in range(g.n) if v not in cov]


class _MISSearch:
    """Independent-set branch and bound with greedy clique-cover pruning."""

    def __init__(self, g: Graph, clock: _Clock, target: int | None):
        self.adj = g.bits
        self.n = g.n
        self.clock = clock
        self.target = target
        self.best = 0
        self.best_set = 0
        self.symmetric = g.vertex_transitive

    def _cover_bound(self, U):
        adj = self.adj
        cliques = 0
        while U:
            v = (U & -U).bit_length() - 1
            cand = U & adj[v]
            U &= ~(1 << v)
            while cand:
                u = (cand & -cand).bit_length() - 1
                U &= ~(1 << u)
                cand &= adj[u]
            cliques += 1
        return cliques

    def _rec(self, C, U, cnt):
        self.clock.tick()
        adj = self.adj
        # vertices of residual degree <= 1 are always safe to take
        changed = True
        while changed and U:
            changed = False
            for v in _bits(U):
                if (adj[v] & U).bit_count() <= 1:
                    C |= 1 << v
                    cnt += 1
                    U &= ~(adj[v] | (1 << v))
                    changed = True
                    break
        if cnt > self.best:
            self.best, self.best_set = cnt, C
            if self.target is not None and cnt >= self.target:
                return True
        if not U:
            return False
        need = self.target if self.target is not None else self.best + 1
        if cnt + self._cover_bound(U) < need:
            return False
        v = max(_bits(U), key=lambda u: (adj[u] & U).bit_count())
        if self._rec(C | (1 << v), U & ~(adj[v] | (1 << v)), cnt + 1):
            return True
        return self._rec(C, U & ~(1 << v), cnt)

    def run(self):
        _ensure_depth(self.n)
        U = (1 << self.n) - 1
        if self.symmetric and self.n:
            return self._rec(1, U & ~(self.adj[0] | 1), 1)
        return self._rec(0, U, 0)


def independence_number(g: Graph, budget: SearchBudget = UNLIMITED,
                        target: int | None = None) -> SolveResult:
    _check_loopless(g)
    clock = _Clock(budget)
    parts = bipartition(g)
    if parts is not None and target is None:
        s = _konig_independent_set(g, parts)
        res = SolveResult(len(s), "exact", make_certificate(g, "independent-set", 0, s),
                          0, clock.seconds)
        res.extra["method"] = "konig"
        return res
    srch = _MISSearch(g, clock, target)
    try:
        srch.run()
        status = "exact"
    except BudgetExceeded:
        status = "interval"
    s = _set_from_bits(srch.best_set)
    res = SolveResult(srch.best, status, make_certificate(g, "independent-set", 0, s),
                      clock.nodes, clock.seconds)
    if target is not None:
        res.lo = srch.best
        if srch.best >= target:
            res.status = "lower"
        elif status == "exact":
            res.status, res.value, res.hi = "upper", target - 1, target - 1
    elif status == "interval":
        res.lo, res.hi = srch.best, srch._cover_bound((1 << g.n) - 1)
    return res


# ------------------------------------------------------ sigma, Delta_beta

def _remaining(budget: SearchBudget, clock: _Clock) -> SearchBudget:
    nl = None if budget.node_limit is None else max(0, budget.node_limit - clock.nodes)
    tl = None if budget.time_limit is None else max(0.0, budget.time_limit - clock.seconds)
    return SearchBudget(nl, tl, budget.mode)


def _k_sweep(g: Graph, size: int, budget: SearchBudget, k_start: int = 0):
    """Least k admitting a set of ``size`` vertices with induced degree <= k."""
    clock = _Clock(budget)
    lo, hi, wit = k_start, None, None
    kmax = max(g.max_degree(), 0)
    k = k_start
    exhausted = False
    while k <= kmax:
        sub = _remaining(budget, clock)
        r = max_low_degree_set(g, k, sub, target=size)
        clock.nodes += r.nodes
        if r.status == "lower":
            hi, wit = k, r.witness
            break
        if r.status == "upper":
            lo = k + 1
        else:
            exhausted = True
            break
        k += 1
    if hi is None and exhausted:
        # no time left for proofs; the full vertex set is a valid upper witness
        hi = kmax
        wit = make_certificate(g, "low-degree-set", kmax, range(g.n))
        wit.vertices = [sorted(range(g.n))[:size]]
        wit.size = size
    return lo, hi, wit, clock


def sensitivity(g: Graph, alpha_hint: int | None = None,
                budget: SearchBudget = UNLIMITED) -> SolveResult:
    """sigma(G): least k with a (alpha+1)-set of induced max degree <= k."""
    _check_loopless(g)
    t0 = time.perf_counter()
    if g.m == 0:
        raise ValueError("sigma is undefined for an edgeless graph")
    if alpha_hint is not None:
        if independence_number(g, budget, target=alpha_hint).status != "lower":
            raise ValueError(f"alpha_hint {alpha_hint} has no independent set")
        if independence_number(g, budget, target=alpha_hint + 1).status != "upper":
            raise ValueError(f"alpha_hint {alpha_hint} is not maximum")
        alpha = alpha_hint
        astat = "exact"
    else:
        a = independence_number(g, budget)
        alpha, astat = a.value, a.status
        if astat != "exact":
            return SolveResult(None, "interval", None, a.nodes, time.perf_counter() - t0,
                               lo=1, hi=g.max_degree(), extra={"alpha": (a.lo, a.hi)})
    lo, hi, wit, clock = _k_sweep(g, alpha + 1, budget, k_start=1)
    secs = time.perf_counter() - t0
    res = SolveResult(hi, "exact" if lo == hi else "interval", wit, clock.nodes, secs,
                      lo=lo, hi=hi, extra={"alpha": alpha})
    if wit is not None:
        wit.k = hi
    return res


def delta_beta(g: Graph, beta, budget: SearchBudget = UNLIMITED) -> SolveResult:
    """min Delta(G[H]) over |H| >= beta*n."""
    _check_loopless(g)
    beta = Fraction(beta).limit_denominator(10 ** 6) if isinstance(beta, float) else Fraction(beta)
    if not 0 < beta <= 1:
        raise ValueError("beta must lie in (0, 1]")
    size = math.ceil(beta * g.n)
    t0 = time.perf_counter()
    lo, hi, wit, clock = _k_sweep(g, size, budget)
    if wit is not None:
        wit.k = hi
    return SolveResult(hi, "exact" if lo == hi else "interval", wit, clock.nodes,
                       time.perf_counter() - t0, lo=lo, hi=hi, extra={"size": size})


# ------------------------------------------------------------------ iota

class _Done(Exception):
    pass


class _ImbalanceSearch:
    """Max |A| over partitions with Delta(G[A]), Delta(G[B]) <= k."""

    def __init__(self, g: Graph, k: int, clock: _Clock):
        self.g = g
        self.n = g.n
        self.k = k
        self.adj = g.bits
        self.nbrs = g.adjacency_lists
        self.clock = clock
        self.best = -1
        self.best_A = 0
        self.symmetric = g.vertex_transitive
        self.cover = _LowDegreeSearch(g, k, clock, None)
        self.cap = g.n

    def _assign(self, v, side, A, B, U, da, db):
        """Put v on ``side`` (0 = A, 1 = B) and propagate; None on conflict."""
        k = self.k
        da, db = da[:], db[:]
        queue = [(v, side)]
        while queue:
            v, side = queue.pop()
            bit = 1 << v
            if not U & bit:
                if (side == 0 and A & bit) or (side == 1 and B & bit):
                    continue
                return None
            U &= ~bit
            if side == 0:
                A |= bit
                own, same = da, A
            else:
                B |= bit
                own, same = db, B
            if own[v] > k:
                return None
            for u in self.nbrs[v]:
                own[u] += 1
            for u in self.nbrs[v]:
                ub = 1 << u
                if same & ub:
                    if own[u] > k:
                        return None
                    if own[u] == k:
                        for w in self.nbrs[u]:
                            if U & (1 << w):
                                queue.append((w, 1 - side))
                elif U & ub and own[u] > k:
                    queue.append((u, 1 - side))
            if own[v] == k:
                for w in self.nbrs[v]:
                    if U & (1 << w):
                        queue.append((w, 1 - side))
        return A, B, U, da, db

    def _rec(self, A, B, U, da, db):
        self.clock.tick()
        if not U:
            c = A.bit_count()
            if c > self.best:
                self.best, self.best_A = c, A
                if c >= self.cap:
                    raise _Done
            return
        if A.bit_count() + U.bit_count() <= self.best:
            return
        if self.n - B.bit_count() - self.cover._lower(B, A, U, db) <= self.best:
            return
        adj = self.adj
        v = max(_bits(U), key=lambda u: (adj[u] & U).bit_count())
        for side in (0, 1):
            st = self._assign(v, side, A, B, U, da, db)
            if st is not None:
                self._rec(*st)

    def run(self):
        _ensure_depth(self.n)
        z = [0] * self.n
        all_ = (1 << self.n) - 1
        try:
            if self.symmetric and self.n:
                st = self._assign(0, 0, 0, 0, all_, z, z)
                if st is not None:
                    self._rec(*st)
            else:
                self._rec(0, 0, all_, z, z)
        except _Done:
            pass


def iota(g: Graph, k: int, budget: SearchBudget = UNLIMITED) -> SolveResult:
    """k-imbalance with a partition witness; ``infeasible`` if no partition exists."""
    _check_loopless(g)
    clock = _Clock(budget)
    s = _ImbalanceSearch(g, k, clock)
    try:
        cap = _LowDegreeSearch(g, k, clock, None)
        cap.greedy()
        cap.run()
        s.cap = cap.best
    except BudgetExceeded:
        pass
    # cheap incumbents: a bipartition, and the best low-degree set found above
    seeds = []
    parts = bipartition(g)
    if parts is not None:
        seeds.append(max(parts, key=len))
    if cap.best_set:
        seeds.append(_set_from_bits(cap.best_set))
    for a in seeds:
        aset = set(a)
        b = [v for v in range(g.n) if v not in aset]
        if induced_max_degree(g, a) <= k and induced_max_degree(g, b) <= k and len(a) > s.best:
            s.best, s.best_A = len(a), sum(1 << v for v in a)
    try:
        if s.best < s.cap:
            s.run()
        status = "exact"
    except BudgetExceeded:
        status = "interval"
    if s.best < 0:
        st = "infeasible" if status == "exact" else "interval"
        return SolveResult(None, st, None, clock.nodes, clock.seconds)
    A = _set_from_bits(s.best_A)
    Aset = set(A)
    B = [v for v in range(g.n) if v not in Aset]
    val = len(A) - len(B)
    res = SolveResult(val, status, make_certificate(g, "partition", k, (A, B)),
                      clock.nodes, clock.seconds)
    if status == "interval":
        hi = s.cap if s.cap < g.n else s.cover.root_bound()
        res.lo, res.hi = val, 2 * hi - g.n
    return res


# ----------------------------------------------------------------- kappa

class _CubeSearch:
    def __init__(self, g: Graph, d: int, clock: _Clock):
        self.adj = g.bits
        self.g = g
        self.d = d
        self.clock = clock
        self.img = [-1] * (1 << d)

    def _rec(self, x, used):
        if x == len(self.img):
            return True
        self.clock.tick()
        cand = ~used
        low = x & -x
        for b in range(self.d):
            if x >> b & 1:
                cand &= self.adj[self.img[x ^ (1 << b)]]
        if x == low and x > 1:
            # coordinate permutations fix 0: order the images of unit vectors
            cand &= ~((1 << (self.img[x >> 1] + 1)) - 1)
        for w in _bits(cand):
            self.img[x] = w
            if self._rec(x + 1, used | (1 << w)):
                return True
        self.img[x] = -1
        return False

    def find(self, roots):
        for r in roots:
            self.img = [-1] * (1 << self.d)
            self.img[0] = r
            if self._rec(1, 1 << r):
                return list(self.img)
        return None


def kappa_search(g: Graph, d_max: int = 6, budget: SearchBudget = UNLIMITED) -> SolveResult:
    """Largest d <= d_max with Q_d as a (not necessarily induced) subgraph."""
    _check_loopless(g)
    if not 0 <= d_max <= 6:
        raise ValueError("d_max must lie in 0..6")
    clock = _Clock(budget)
    roots = [0] if g.vertex_transitive else range(g.n)
    best, emb = 0, [0] if g.n else []
    maxdeg = g.max_degree()
    status = "exact"
    for d in range(1, d_max + 1):
        if d > maxdeg or (1 << d) > g.n:
            break
        try:
            found = _CubeSearch(g, d, clock).find(roots)
        except BudgetExceeded:
            status = "lower"
            break
        if found is None:
            break
        best, emb = d, found
    wit = make_certificate(g, "cube-embedding", 0, emb, size=best)
    res = SolveResult(best, status, wit, clock.nodes, clock.seconds)
    if status == "lower":
        res.lo, res.hi = best, d_max
    return res
