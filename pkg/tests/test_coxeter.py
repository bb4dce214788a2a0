import math

import networkx as nx
import pytest

from cayleysens import coxeter as cx
from cayleysens import graph as gr
from cayleysens import groups as grp
from cayleysens import solver as sv
from oracles import to_nx

ORDERS = {"A1": 2, "A2": 6, "A3": 24, "A4": 120, "A5": 720, "B2": 8, "B3": 48, "B4": 384,
          "D4": 192, "I5": 10, "I8": 16, "H3": 120, "F4": 1152, "I2xI3": 24, "A2xB2": 48}
# positive roots, counted directly from a root list
REFLECTIONS = {"A1": 1, "A2": 3, "A3": 6, "A4": 10, "A5": 15, "B2": 4, "B3": 9, "B4": 16,
               "D4": 12, "I5": 5, "I8": 8, "H3": 15, "F4": 24, "I2xI3": 5, "A2xB2": 7}


@pytest.mark.parametrize("desc", sorted(ORDERS))
def test_orders_and_reflections(desc):
    s = cx.coxeter_system(desc)
    assert s.order == ORDERS[desc]
    assert s.reflections == REFLECTIONS[desc]
    assert max(s.lengths) == s.reflections
    for g in s.group.generators:
        assert g != 0 and s.group.mul(g, g) == 0


def test_coxeter_relations():
    for desc in ("A3", "B3", "D4", "H3", "I7"):
        s = cx.coxeter_system(desc)
        gens = s.group.generators
        for i in range(s.rank):
            for j in range(s.rank):
                assert s.group.element_order(s.group.mul(gens[i], gens[j])) == s.matrix[i][j]


def test_root_lists_are_closed_and_symmetric():
    for desc in ("B3", "H3", "F4"):
        s = cx.coxeter_system(desc)
        assert len(s.roots) == 2 * s.reflections
        for p in s.generator_perms:
            assert sorted(p) == list(range(len(s.roots)))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_type_a_matches_symmetric_group(n):
    s = cx.coxeter_system(f"A{n}")
    S = grp.symmetric(n + 1)
    gens = [S.find(grp.perm_from_cycles(n + 1, [i, i + 1])) for i in range(1, n + 1)]
    h = grp.cayley_graph(S, gens)
    assert nx.is_isomorphic(to_nx(cx.coxeter_cayley(s)), to_nx(h))


@pytest.mark.parametrize("m", [2, 3, 5, 8, 12])
def test_dihedral_type_is_a_cycle(m):
    g = cx.coxeter_cayley(cx.coxeter_system(f"I{m}"))
    assert nx.is_isomorphic(to_nx(g), nx.cycle_graph(2 * m))


@pytest.mark.parametrize("fam,n", [("B", 3), ("D", 4)])
def test_signed_model_matches_root_model(fam, n):
    s = cx.coxeter_system(f"{fam}{n}")
    _, h = cx.bn_dn_graph(fam, n)
    assert nx.is_isomorphic(to_nx(cx.coxeter_cayley(s)), to_nx(h))


@pytest.mark.parametrize("desc", ["A3", "B3", "H3", "D4", "I6xA1"])
def test_length_parity_halves_the_group(desc):
    s = cx.coxeter_system(desc)
    even = sum(1 for l in s.lengths if l % 2 == 0)
    assert even == s.order // 2
    g = cx.coxeter_cayley(s)
    assert all((s.lengths[u] + s.lengths[v]) % 2 == 1 for u, v in g.edges)


def test_reduced_words_round_trip():
    s = cx.coxeter_system("B3")
    for w in range(s.order):
        word = s.word(w)
        assert len(word) == s.length(w) and s.from_word(word) == w


@pytest.mark.parametrize("desc,J", [("A3", (0, 2)), ("A4", (0, 2)), ("B3", (0,)),
                                    ("H3", (0, 2)), ("D4", (0, 2, 3)), ("A5", (0, 2, 4))])
def test_quotient_invariants(desc, J):
    s = cx.coxeter_system(desc)
    q = cx.parabolic_quotient(s, J, check=True)
    assert len(q.reps) * len(q.subgroup) == s.order
    assert q.layer_sizes == q.layer_sizes[::-1]
    r = s.reflections
    for w in q.reps:
        for j in J:
            assert s.length(s.right_mul(w, j)) > s.length(w)
            assert s.group.elements[w][s.simple_index[j]] < r
    assert cx.quotient_edge_partition_check(q) == []


def test_odd_corank_gives_zero_imbalance():
    for desc, J in (("A3", (0,)), ("A4", (1,)), ("B3", (0, 2)), ("H3", (0,))):
        s = cx.coxeter_system(desc)
        if (s.reflections - len(J)) % 2:
            assert cx.iota0_quotient(cx.parabolic_quotient(s, J)) == 0


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_type_a_quotient_imbalance_lower_bound(n):
    s = cx.coxeter_system(f"A{n}")
    J = tuple(range(0, n, 2))
    val = cx.iota0_quotient(cx.parabolic_quotient(s, J))
    assert val >= math.factorial(math.ceil(n / 2))


def test_quotient_imbalance_matches_solver():
    s = cx.coxeter_system("A3")
    q = cx.parabolic_quotient(s, (0, 2))
    assert sv.iota(q.quotient_graph, 0).value == cx.iota0_quotient(q)


@pytest.mark.parametrize("desc,expected", [
    ("A1", True), ("A2", True), ("A3", True), ("A4", True), ("A5", True),
    ("I3", True), ("I5", True), ("I7", True), ("I2", True),
    ("I4", False), ("I6", False), ("I8", False),
    ("B2", False), ("B3", False), ("D4", False), ("H3", False),
    ("A2xA2", True), ("I3xI5", True), ("A3xI2", True), ("I2xI3xI3", True),
])
def test_cube_like_classification(desc, expected):
    assert bool(cx.is_cube_like(cx.coxeter_system(desc))) == expected


@pytest.mark.parametrize("desc", ["A2", "A3", "A4", "I5", "A2xA2", "A3xI2", "I2xI3xI3"])
def test_cube_like_subset_certificate(desc):
    s = cx.coxeter_system(desc)
    cert = cx.cube_like_subset(s)
    g = cx.coxeter_cayley(s)
    rep = gr.verify_certificate(g, cert)
    assert rep.valid, rep.failures
    k = cx.kappa_formula(s)
    assert cert.k == (math.isqrt(k - 1) + 1 if k > 1 else 1)
    assert cert.size > s.order // 2


def test_cube_like_subset_rejects_bad_j():
    s = cx.coxeter_system("A3")
    with pytest.raises(cx.CoxeterError):
        cx.cube_like_subset(s, (0, 1))
    with pytest.raises(cx.CoxeterError):
        cx.cube_like_subset(cx.coxeter_system("B3"))


@pytest.mark.parametrize("fam,n", [("B", 3), ("B", 4), ("D", 4)])
def test_signed_model_subset(fam, n):
    g, cert = cx.bn_dn_subset(fam, n)
    rep = gr.verify_certificate(g, cert)
    assert rep.valid, rep.failures
    assert cert.size > g.n // 2


def test_weak_order_is_a_lattice_with_cayley_cover_graph():
    for desc in ("A2", "A3", "B2", "I5"):
        s = cx.coxeter_system(desc)
        L = cx.weak_order_lattice(s)
        assert L.check() == []
        cg = L.cover_graph()
        assert cg.edges == cx.coxeter_cayley(s).edges
        for w in range(s.order):
            assert len(cx.inversion_set(s, w)) == s.length(w)


@pytest.mark.parametrize("desc", ["A1", "A3", "A4", "B3", "D4", "I5", "H3", "I2xI3", "A2xA1",
                                  "I2xI3xI3", "B3xI2", "F4"])
def test_kappa_formula_matches_search(desc):
    s = cx.coxeter_system(desc)
    res = sv.kappa_search(cx.coxeter_cayley(s), 6)
    assert res.exact and res.value == cx.kappa_formula(s)


def test_arc_diagrams_fix_parity():
    for n in range(2, 8):
        for parities in cx.arc_diagram_parities(n).values():
            assert len(parities) == 1


@pytest.mark.parametrize("bad", ["E7", "E8", "A0", "A9", "B1", "D3", "H2", "Q3", "", "A2x"])
def test_descriptor_errors(bad):
    with pytest.raises(cx.CoxeterError):
        cx.coxeter_system(bad)


def test_order_cap_on_products():
    with pytest.raises(cx.CoxeterError):
        cx.coxeter_system("E6xA2")
