import math

import pytest
from hypothesis import given, settings, strategies as st

from cayleysens import graph as gr
from cayleysens import solver as sv
from conftest import small_corpus
from oracles import SubsetTable, kappa as kappa_oracle

CORPUS = small_corpus()
NAMES = sorted(CORPUS)


@pytest.fixture(scope="module")
def tables():
    return {name: SubsetTable(g) for name, g in CORPUS.items()}


def _valid(g, res):
    return res.witness is None or gr.verify_certificate(g, res.witness).valid


@pytest.mark.parametrize("name", NAMES)
def test_alpha_matches_enumeration(name, tables):
    g = CORPUS[name]
    res = sv.independence_number(g)
    assert res.exact and res.value == tables[name].alpha()
    assert _valid(g, res)


@pytest.mark.parametrize("name", NAMES)
def test_low_degree_sets_match_enumeration(name, tables):
    g = CORPUS[name]
    prev = -1
    for k in range(4):
        res = sv.max_low_degree_set(g, k)
        assert res.exact and res.value == tables[name].max_low_degree(k)
        assert _valid(g, res)
        assert res.value >= prev
        prev = res.value


@pytest.mark.parametrize("name", NAMES)
def test_sensitivity_matches_enumeration(name, tables):
    g = CORPUS[name]
    res = sv.sensitivity(g)
    assert res.exact and res.value == tables[name].sigma()
    assert res.extra["alpha"] == tables[name].alpha()
    assert res.witness.size >= res.extra["alpha"] + 1
    assert _valid(g, res)


@pytest.mark.parametrize("name", NAMES)
def test_delta_beta_matches_enumeration_and_is_monotone(name, tables):
    g = CORPUS[name]
    vals = []
    for beta in ("1/2", "3/5", "3/4", "1"):
        res = sv.delta_beta(g, beta)
        assert res.exact and res.value == tables[name].delta_beta(beta)
        assert _valid(g, res)
        vals.append(res.value)
    assert vals == sorted(vals)


@pytest.mark.parametrize("name", NAMES)
def test_iota_matches_enumeration(name, tables):
    g = CORPUS[name]
    for k in range(3):
        res = sv.iota(g, k)
        want = tables[name].iota(k)
        if want is None:
            assert res.status == "infeasible" and res.value is None
        else:
            assert res.exact and res.value == want
            assert _valid(g, res)


@pytest.mark.parametrize("name", NAMES)
def test_kappa_matches_subgraph_search(name):
    g = CORPUS[name]
    res = sv.kappa_search(g, 4)
    assert res.exact and res.value == kappa_oracle(g, 4)
    assert _valid(g, res)


def test_alpha_hint_checked():
    g = gr.petersen_graph()
    assert sv.sensitivity(g, alpha_hint=4).value == 1
    with pytest.raises(ValueError):
        sv.sensitivity(g, alpha_hint=3)
    with pytest.raises(ValueError):
        sv.sensitivity(g, alpha_hint=5)


def test_huang_bound_on_bipartite_cayley_graphs():
    for name, g in CORPUS.items():
        if g.cayley is None or gr.bipartition(g) is None:
            continue
        s = sv.sensitivity(g).value
        k = sv.kappa_search(g, 6).value
        assert s >= math.sqrt(k), name


def test_loops_rejected():
    g = gr.Graph(3, [(0, 1)], loops=[2])
    with pytest.raises(ValueError):
        sv.independence_number(g)


def test_edgeless_sigma_undefined():
    with pytest.raises(ValueError):
        sv.sensitivity(gr.empty_graph(3))


def test_budget_parsing():
    assert sv.SearchBudget.parse("600s").time_limit == 600
    assert sv.SearchBudget.parse("1e7nodes").node_limit == 10 ** 7
    b = sv.SearchBudget.parse("5s,100nodes")
    assert (b.time_limit, b.node_limit) == (5, 100)
    with pytest.raises(ValueError):
        sv.SearchBudget.parse("fast")


def test_budget_exhaustion_reports_interval():
    g = gr.hypercube_graph(6)
    res = sv.max_low_degree_set(g, 1, sv.SearchBudget(node_limit=50))
    assert res.status in ("interval", "exact")
    if res.status == "interval":
        assert res.lo <= res.hi
        assert res.witness.size == res.lo
    assert gr.verify_certificate(g, res.witness).valid


def test_target_mode():
    g = gr.hypercube_graph(4)
    assert sv.max_low_degree_set(g, 2, target=9).status == "lower"
    r = sv.max_low_degree_set(g, 2, target=10)
    assert r.status == "upper" and r.value == 9


def test_deterministic_replay():
    g = CORPUS["petersen"]
    a = sv.sensitivity(g)
    b = sv.sensitivity(g)
    assert a.witness.vertices == b.witness.vertices
    c = sv.iota(g, 1)
    d = sv.iota(g, 1)
    assert c.witness.vertices == d.witness.vertices


def test_vertex_transitive_flag_does_not_change_values():
    g = CORPUS["mobius-kantor"]
    plain = gr.Graph(g.n, g.edges)
    for k in range(3):
        assert sv.max_low_degree_set(g, k).value == sv.max_low_degree_set(plain, k).value
    assert sv.kappa_search(g).value == sv.kappa_search(plain).value


@st.composite
def random_graphs(draw, max_n=10):
    n = draw(st.integers(2, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return gr.Graph(n, [p for p, b in zip(pairs, keep) if b])


@settings(max_examples=40, deadline=None)
@given(random_graphs())
def test_random_graphs_match_enumeration(g):
    t = SubsetTable(g)
    assert sv.independence_number(g).value == t.alpha()
    for k in (1, 2):
        assert sv.max_low_degree_set(g, k).value == t.max_low_degree(k)
        r = sv.iota(g, k)
        assert (r.value if r.status != "infeasible" else None) == t.iota(k)
    if g.m:
        assert sv.sensitivity(g).value == t.sigma()


def test_random_connection_sets_seeded():
    from cayleysens.groups import group_make, random_connection_set
    grp = group_make("symmetric:4")
    a = random_connection_set(grp, 3, 42)
    b = random_connection_set(grp, 3, 42)
    assert a == b
    assert all(grp.inv(c) in a for c in a)
