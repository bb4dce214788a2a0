"""Finite groups with reproducible element indexing, and their Cayley graphs.

Every group is generated by breadth-first search from the identity over its
generators sorted by label, so element ``0`` is always the identity and two
builds of the same spec agree index for index.

Group-spec grammar::

    spec     := family ":" args | "pauli" | "product:(" spec ("," spec)* ")"
    family   := "cyclic" | "dihedral" | "symmetric" | "alternating"
              | "signed" | "even-signed" | "elementary" | "modular" | "quasidihedral"

``elementary:p^r`` takes a prime power, ``modular:16`` and ``quasidihedral:16``
only accept 16.  Permutations compose left to right: ``(p*q)(i) = q(p(i))``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

MAX_ORDER = 200_000

# supported parameter ranges per family (inclusive)
FAMILY_RANGES = {
    "cyclic": (1, MAX_ORDER),
    "dihedral": (1, MAX_ORDER // 2),
    "symmetric": (1, 8),
    "alternating": (1, 9),
    "signed": (1, 6),
    "even-signed": (2, 6),
}


class GroupSpecError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group on indices ``0..order-1`` with identity ``0``."""

    name: str
    elements: tuple
    index: dict = field(repr=False)
    op: Callable = field(repr=False)
    inverse: Callable = field(repr=False)
    labeler: Callable = field(repr=False)
    generators: tuple = ()

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        return 0

    def mul(self, x: int, y: int) -> int:
        return self.index[self.op(self.elements[x], self.elements[y])]

    def inv(self, x: int) -> int:
        return self.index[self.inverse(self.elements[x])]

    def label(self, x: int) -> str:
        return self.labeler(self.elements[x])

    def find(self, obj: Hashable) -> int:
        return self.index[obj]

    def right_table(self, c: int) -> list[int]:
        """``[mul(x, c) for x in range(order)]`` without per-call overhead."""
        g = self.elements[c]
        op, idx = self.op, self.index
        return [idx[op(x, g)] for x in self.elements]

    def power(self, x: int, k: int) -> int:
        r = 0
        for _ in range(k):
            r = self.mul(r, x)
        return r

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = self.mul(y, x)
            k += 1
        return k


def from_generators(name: str, identity, gens: Iterable, op, inverse, labeler,
                    max_order: int = MAX_ORDER) -> FiniteGroup:
    """Close ``gens`` under ``op`` by BFS from ``identity``."""
    gens = sorted({g for g in gens if g != identity}, key=labeler)
    elements = [identity]
    index = {identity: 0}
    i = 0
    while i < len(elements):
        x = elements[i]
        for g in gens:
            y = op(x, g)
            if y not in index:
                if len(elements) >= max_order:
                    raise GroupSpecError(f"{name}: order exceeds {max_order}")
                index[y] = len(elements)
                elements.append(y)
        i += 1
    return FiniteGroup(name, tuple(elements), index, op, inverse, labeler,
                       tuple(index[g] for g in gens))


# ---------------------------------------------------------------- permutations

def perm_mul(p: tuple, q: tuple) -> tuple:
    return tuple(q[i] for i in p)


def perm_inv(p: tuple) -> tuple:
    r = [0] * len(p)
    for i, j in enumerate(p):
        r[j] = i
    return tuple(r)


def perm_sign(p: Sequence[int]) -> int:
    seen = [False] * len(p)
    s = 1
    for i in range(len(p)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            if length % 2 == 0:
                s = -s
    return s


def perm_from_cycles(n: int, *cycles: Sequence[int]) -> tuple:
    """Build a permutation of ``0..n-1`` from 1-based cycles."""
    p = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            p[a - 1] = b - 1
    return tuple(p)


def cycle_notation(p: Sequence[int]) -> str:
    seen = set()
    parts = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = []
        j = i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j + 1))
            j = p[j]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "()"


def support(p: Sequence[int]) -> set[int]:
    """1-based support of a permutation."""
    return {i + 1 for i in range(len(p)) if p[i] != i}


# ------------------------------------------------------ signed permutations

def signed_mul(x: tuple, y: tuple) -> tuple:
    """(A, p)(B, q) = (A ^ p^{-1}(B), p*q); subsets are bitmasks over 0..n-1."""
    a, p = x
    b, q = y
    pre = 0
    for i, pi in enumerate(p):
        if b >> pi & 1:
            pre |= 1 << i
    return (a ^ pre, perm_mul(p, q))


def signed_inv(x: tuple) -> tuple:
    a, p = x
    img = 0
    for i, pi in enumerate(p):
        if a >> i & 1:
            img |= 1 << pi
    return (img, perm_inv(p))


def _signed_label(x: tuple) -> str:
    a, p = x
    elems = [str(i + 1) for i in range(len(p)) if a >> i & 1]
    return "({" + ",".join(elems) + "}, " + cycle_notation(p) + ")"


def signed_generators(n: int, even: bool = False) -> list[tuple]:
    ident = tuple(range(n))
    gens = [(0, perm_from_cycles(n, [i, i + 1])) for i in range(1, n)]
    if even:
        gens.append((0b11, perm_from_cycles(n, [1, 2])))
    else:
        gens.append((1, ident))
    return gens


# ----------------------------------------------------------------- Pauli group

# product of single-qubit Paulis: (a, b) -> (phase exponent of i, result)
_PAULI_NAMES = "IXYZ"
_PAULI_TABLE = {}
for _a in range(4):
    for _b in range(4):
        if _a == 0:
            _PAULI_TABLE[_a, _b] = (0, _b)
        elif _b == 0:
            _PAULI_TABLE[_a, _b] = (0, _a)
        elif _a == _b:
            _PAULI_TABLE[_a, _b] = (0, 0)
        else:
            _c = 6 - _a - _b
            # XY = iZ, YZ = iX, ZX = iY; reversed order gives -i
            _PAULI_TABLE[_a, _b] = (1 if (_b - _a) % 3 == 1 else 3, _c)


def pauli_mul(x: tuple, y: tuple) -> tuple:
    ph, c = _PAULI_TABLE[x[1], y[1]]
    return ((x[0] + y[0] + ph) % 4, c)


def pauli_inv(x: tuple) -> tuple:
    k, a = x
    # (i^k P)^{-1} = i^{-k} P
    return ((-k) % 4, a)


def pauli_label(x: tuple) -> str:
    k, a = x
    return ["", "i", "-", "-i"][k] + _PAULI_NAMES[a]


def pauli_matrix(x: tuple):
    """Complex 2x2 matrix of a Pauli group element (for cross-checks)."""
    import numpy as np
    base = {
        0: np.eye(2),
        1: np.array([[0, 1], [1, 0]]),
        2: np.array([[0, -1j], [1j, 0]]),
        3: np.array([[1, 0], [0, -1]]),
    }[x[1]]
    return (1j ** x[0]) * base


# ------------------------------------------------------------------- builders

def _parse_int(s: str, spec: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise GroupSpecError(f"malformed group spec {spec!r}") from None


def _check_range(family: str, n: int) -> None:
    lo, hi = FAMILY_RANGES[family]
    if not lo <= n <= hi:
        raise GroupSpecError(f"{family}:{n} out of supported range {lo}..{hi}")


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def cyclic(n: int) -> FiniteGroup:
    _check_range("cyclic", n)
    return from_generators(f"cyclic:{n}", 0, [1 % n], lambda a, b: (a + b) % n,
                           lambda a: (-a) % n, str)


def dihedral(n: int) -> FiniteGroup:
    """D_n = <a, b | a^n = b^2 = (ab)^2 = 1>, elements (i, s) = a^i b^s."""
    _check_range("dihedral", n)

    def op(x, y):
        return ((x[0] + (-y[0] if x[1] else y[0])) % n, x[1] ^ y[1])

    def inv(x):
        return x if x[1] else ((-x[0]) % n, 0)

    def label(x):
        i, s = x
        if i == 0:
            return "b" if s else "1"
        return f"a^{i} b" if s else f"a^{i}"

    return from_generators(f"dihedral:{n}", (0, 0), [(1 % n, 0), (0, 1)], op, inv, label)


def symmetric(n: int) -> FiniteGroup:
    _check_range("symmetric", n)
    gens = [perm_from_cycles(n, [1, 2]) if n >= 2 else tuple(range(n)),
            perm_from_cycles(n, list(range(1, n + 1)))]
    return from_generators(f"symmetric:{n}", tuple(range(n)), gens, perm_mul, perm_inv,
                           cycle_notation)


def alternating(n: int) -> FiniteGroup:
    _check_range("alternating", n)
    ident = tuple(range(n))
    gens = []
    if n >= 3:
        gens.append(perm_from_cycles(n, [1, 2, 3]))
        if n % 2:
            gens.append(perm_from_cycles(n, list(range(1, n + 1))))
        else:
            gens.append(perm_from_cycles(n, list(range(2, n + 1))))
    return from_generators(f"alternating:{n}", ident, gens, perm_mul, perm_inv, cycle_notation)


def signed(n: int, even: bool = False) -> FiniteGroup:
    family = "even-signed" if even else "signed"
    _check_range(family, n)
    return from_generators(f"{family}:{n}", (0, tuple(range(n))), signed_generators(n, even),
                           signed_mul, signed_inv, _signed_label)


def elementary(p: int, r: int) -> FiniteGroup:
    if not _is_prime(p) or r < 1 or p ** r > MAX_ORDER:
        raise GroupSpecError(f"elementary:{p}^{r} unsupported")
    zero = (0,) * r
    gens = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    return from_generators(
        f"elementary:{p}^{r}", zero, gens,
        lambda a, b: tuple((x + y) % p for x, y in zip(a, b)),
        lambda a: tuple((-x) % p for x in a),
        lambda a: "(" + ",".join(map(str, a)) + ")")


def pauli() -> FiniteGroup:
    gens = [(0, 1), (0, 2), (0, 3)]
    return from_generators("pauli", (0, 0), gens, pauli_mul, pauli_inv, pauli_label)


def metacyclic16(twist: int, name: str) -> FiniteGroup:
    """<x, y | x^8 = y^2 = e, y x = x^twist y> in normal form x^r y^s.

    Cosets of <x> are {<x>, <x>y}; moving y past x^t rewrites it as
    x^(twist*t) y, which is all the enumeration needs.
    """
    if pow(twist, 2, 8) != 1:
        raise GroupSpecError(f"{name}: relator inconsistent with y^2 = e")

    def op(a, b):
        r = (a[0] + (b[0] * twist if a[1] else b[0])) % 8
        return (r, a[1] ^ b[1])

    def inv(a):
        r, s = a
        return ((-r * twist) % 8, 1) if s else ((-r) % 8, 0)

    def label(a):
        r, s = a
        head = "e" if r == 0 else ("x" if r == 1 else f"x^{r}")
        if not s:
            return head
        return "y" if r == 0 else head + " y"

    return from_generators(name, (0, 0), [(1, 0), (0, 1)], op, inv, label)


def direct_product(factors: Sequence[FiniteGroup], name: str | None = None) -> FiniteGroup:
    total = math.prod(f.order for f in factors)
    if total > MAX_ORDER:
        raise GroupSpecError(f"product order {total} exceeds {MAX_ORDER}")
    ident = tuple(f.elements[0] for f in factors)
    gens = []
    for k, f in enumerate(factors):
        for g in f.generators:
            e = list(ident)
            e[k] = f.elements[g]
            gens.append(tuple(e))

    def op(a, b):
        return tuple(f.op(x, y) for f, x, y in zip(factors, a, b))

    def inv(a):
        return tuple(f.inverse(x) for f, x in zip(factors, a))

    def label(a):
        return "(" + ", ".join(f.labeler(x) for f, x in zip(factors, a)) + ")"

    name = name or "product:(" + ",".join(f.name for f in factors) + ")"
    return from_generators(name, ident, gens, op, inv, label)


def _split_top(s: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise GroupSpecError(f"unbalanced parentheses in {s!r}")
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    if depth:
        raise GroupSpecError(f"unbalanced parentheses in {s!r}")
    parts.append(cur)
    return [p.strip() for p in parts]


def group_make(spec: str) -> FiniteGroup:
    """Build a group from a spec string such as ``"dihedral:9"``."""
    spec = spec.strip()
    if spec == "pauli":
        return pauli()
    if ":" not in spec:
        raise GroupSpecError(f"malformed group spec {spec!r}")
    family, arg = spec.split(":", 1)
    if family == "product":
        if not (arg.startswith("(") and arg.endswith(")")):
            raise GroupSpecError(f"malformed group spec {spec!r}")
        inner = _split_top(arg[1:-1])
        if not inner or any(not p for p in inner):
            raise GroupSpecError(f"malformed group spec {spec!r}")
        return direct_product([group_make(p) for p in inner], name=spec)
    if family == "elementary":
        if "^" in arg:
            p, r = arg.split("^", 1)
            return elementary(_parse_int(p, spec), _parse_int(r, spec))
        return elementary(_parse_int(arg, spec), 1)
    if family in ("modular", "quasidihedral"):
        if arg != "16":
            raise GroupSpecError(f"{family} is only provided for order 16")
        return metacyclic16(5 if family == "modular" else 3, spec)
    n = _parse_int(arg, spec)
    builders = {
        "cyclic": cyclic,
        "dihedral": dihedral,
        "symmetric": symmetric,
        "alternating": alternating,
        "signed": signed,
        "even-signed": lambda m: signed(m, even=True),
    }
    if family not in builders:
        raise GroupSpecError(f"unknown group family {family!r}")
    return builders[family](n)


# ------------------------------------------------------------ connection sets

def inverse_closure(group: FiniteGroup, elems: Iterable[int]) -> frozenset[int]:
    out = set()
    for c in elems:
        out.add(c)
        out.add(group.inv(c))
    return frozenset(out)


def generated_subgroup_order(group: FiniteGroup, gens: Iterable[int]) -> int:
    gens = list(gens)
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for c in gens:
                y = group.mul(x, c)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


@dataclass(frozen=True)
class ConnectionReport:
    has_identity: bool
    inverse_closed: bool
    generates: bool

    @property
    def ok(self) -> bool:
        return not self.has_identity and self.inverse_closed


def check_connection_set(group: FiniteGroup, conn: Iterable[int]) -> ConnectionReport:
    conn = frozenset(conn)
    return ConnectionReport(
        has_identity=0 in conn,
        inverse_closed=all(group.inv(c) in conn for c in conn),
        generates=generated_subgroup_order(group, conn) == group.order,
    )


def cayley_graph(group: FiniteGroup, conn: Iterable[int], name: str | None = None):
    """Cay(group, conn): x ~ y iff x^{-1} y in conn."""
    from .graph import Graph, CayleyData

    conn = frozenset(conn)
    for c in conn:
        if not 0 <= c < group.order:
            raise ValueError(f"connection element {c} out of range")
    rep = check_connection_set(group, conn)
    if rep.has_identity:
        raise ValueError("connection set contains the identity")
    if not rep.inverse_closed:
        raise ValueError("connection set is not closed under inverses")
    edges = set()
    for c in sorted(conn):
        for x, y in enumerate(group.right_table(c)):
            edges.add((x, y) if x < y else (y, x))
    labels = ",".join(group.label(c) for c in sorted(conn))
    meta = name or f"cay({group.name};{labels})"
    return Graph(group.order, edges, meta=meta, vertex_transitive=True,
                 cayley=CayleyData(group, conn))


def random_connection_set(group: FiniteGroup, size: int, seed: int) -> frozenset[int]:
    """Inverse-closed random set with ``size <= len <= 2*size``."""
    if size < 1 or size > group.order - 1:
        raise ValueError(f"infeasible connection-set size {size} for order {group.order}")
    rng = random.Random(seed)
    chosen: set[int] = set()
    while len(chosen) < size:
        c = rng.randrange(1, group.order)
        chosen.add(c)
        chosen.add(group.inv(c))
    return frozenset(chosen)
