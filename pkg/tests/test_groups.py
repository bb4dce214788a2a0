import itertools
import random

import numpy as np
import pytest

from cayleysens import groups as grp
from cayleysens.graph import is_connected

SPECS = ["cyclic:7", "dihedral:5", "dihedral:9", "symmetric:4", "alternating:5", "signed:3",
         "even-signed:3", "elementary:3^3", "pauli", "modular:16", "quasidihedral:16",
         "product:(cyclic:2,dihedral:3)"]
ORDERS = {"cyclic:7": 7, "dihedral:5": 10, "dihedral:9": 18, "symmetric:4": 24,
          "alternating:5": 60, "signed:3": 48, "even-signed:3": 24, "elementary:3^3": 27,
          "pauli": 16, "modular:16": 16, "quasidihedral:16": 16,
          "product:(cyclic:2,dihedral:3)": 12}


@pytest.mark.parametrize("spec", SPECS)
def test_group_laws_exhaustive(spec):
    G = grp.group_make(spec)
    n = G.order
    assert n == ORDERS[spec]
    table = [[G.mul(x, y) for y in range(n)] for x in range(n)]
    for x in range(n):
        assert table[0][x] == x and table[x][0] == x
        assert table[x][G.inv(x)] == 0 and table[G.inv(x)][x] == 0
        assert sorted(table[x]) == list(range(n))
    for x, y, z in itertools.product(range(n), repeat=3):
        assert table[table[x][y]][z] == table[x][table[y][z]]


def test_group_laws_sampled_large():
    G = grp.group_make("symmetric:6")
    rng = random.Random(1)
    for _ in range(2000):
        x, y, z = (rng.randrange(G.order) for _ in range(3))
        assert G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z))
        assert G.mul(x, G.inv(x)) == 0


def test_perm_composition_left_to_right():
    p = grp.perm_from_cycles(3, [1, 2])
    q = grp.perm_from_cycles(3, [2, 3])
    # apply p then q: 1 -> 2 -> 3
    assert grp.perm_mul(p, q)[0] == 2
    assert grp.perm_sign(grp.perm_from_cycles(4, [1, 2, 3, 4])) == -1
    assert grp.cycle_notation(grp.perm_from_cycles(4, [1, 3])) == "(1 3)"
    assert grp.support(grp.perm_from_cycles(5, [2, 5])) == {2, 5}


def _signed_as_map(x, n):
    """Signed permutation as a map on {+-1..+-n}: i -> sign * (p(i)+1)."""
    A, p = x
    out = {}
    for i in range(n):
        s = -1 if A >> i & 1 else 1
        out[i + 1] = s * (p[i] + 1)
        out[-(i + 1)] = -s * (p[i] + 1)
    return out


@pytest.mark.parametrize("n", [1, 2, 3])
def test_signed_multiplication_matches_wreath_oracle(n):
    elems = [(A, p) for A in range(1 << n) for p in itertools.permutations(range(n))]
    for x in elems:
        mx = _signed_as_map(x, n)
        for y in elems:
            my = _signed_as_map(y, n)
            composed = {k: my[mx[k]] for k in mx}  # x first, then y
            assert _signed_as_map(grp.signed_mul(x, y), n) == composed
        inv = _signed_as_map(grp.signed_inv(x), n)
        assert all(inv[mx[k]] == k for k in mx)


def test_pauli_table_matches_matrices():
    G = grp.pauli()
    for x in G.elements:
        for y in G.elements:
            prod = grp.pauli_matrix(x) @ grp.pauli_matrix(y)
            assert np.allclose(prod, grp.pauli_matrix(grp.pauli_mul(x, y)))


def test_metacyclic_relations():
    for spec, twist in (("modular:16", 5), ("quasidihedral:16", 3)):
        G = grp.group_make(spec)
        x, y = G.find((1, 0)), G.find((0, 1))
        assert G.element_order(x) == 8 and G.element_order(y) == 2
        assert G.mul(y, x) == G.mul(G.power(x, twist), y)


def test_group_spec_errors():
    for bad in ("dihedral", "dihedral:0", "symmetric:9", "frobnicate:3", "modular:32",
                "product:cyclic:2", "elementary:4^2"):
        with pytest.raises(grp.GroupSpecError):
            grp.group_make(bad)


def test_order_cap():
    with pytest.raises(grp.GroupSpecError):
        grp.group_make("cyclic:300000")


def test_connection_set_checks():
    G = grp.group_make("cyclic:8")
    rep = grp.check_connection_set(G, [G.find(1), G.find(7)])
    assert rep.ok and rep.generates
    rep = grp.check_connection_set(G, [G.find(2)])
    assert not rep.inverse_closed and not rep.generates
    with pytest.raises(ValueError):
        grp.cayley_graph(G, [G.find(0), G.find(1), G.find(7)])
    with pytest.raises(ValueError):
        grp.cayley_graph(G, [G.find(1)])
    assert grp.generated_subgroup_order(G, [G.find(2)]) == 4


@pytest.mark.parametrize("spec,size,seed", [("symmetric:4", 2, 3), ("dihedral:9", 3, 1),
                                            ("pauli", 2, 0), ("signed:3", 3, 9)])
def test_cayley_graph_regular_and_transitive(spec, size, seed):
    G = grp.group_make(spec)
    conn = grp.random_connection_set(G, size, seed)
    g = grp.cayley_graph(G, conn)
    assert set(g.degrees()) == {len(conn)}
    rng = random.Random(seed)
    edges = set(g.edges)
    for _ in range(50):
        x, y = rng.randrange(G.order), rng.randrange(G.order)
        t = G.mul(y, G.inv(x))
        image = {tuple(sorted((G.mul(t, u), G.mul(t, v)))) for u, v in edges}
        assert image == edges
        assert G.mul(t, x) == y


def test_from_generators_is_reproducible():
    a = grp.group_make("alternating:4")
    b = grp.group_make("alternating:4")
    assert a.elements == b.elements
    assert is_connected(grp.cayley_graph(a, grp.inverse_closure(a, a.generators)))
