import itertools
import math

import networkx as nx
import pytest

from cayleysens import graph as gr
from cayleysens import incidence as inc
from cayleysens import solver as sv
from cayleysens import spectral as sp
from oracles import to_nx


@pytest.mark.parametrize("q", inc.SUPPORTED_Q)
def test_field_axioms(q):
    f = inc.field(q)
    els = range(q)
    for a, b in itertools.product(els, repeat=2):
        assert f.add[a][b] == f.add[b][a] and f.mul[a][b] == f.mul[b][a]
        assert f.add[a][f.neg[a]] == 0
    for a in range(1, q):
        assert f.mul[a][f.inv[a]] == 1
    for a, b, c in itertools.product(els, repeat=3):
        assert f.mul[a][f.add[b][c]] == f.add[f.mul[a][b]][f.mul[a][c]]
        assert f.add[f.add[a][b]][c] == f.add[a][f.add[b][c]]


def test_unsupported_field():
    for q in (6, 10, 11):
        with pytest.raises(inc.IncidenceError):
            inc.field(q)


@pytest.mark.parametrize("q", inc.SUPPORTED_Q)
def test_projective_plane_axioms(q):
    P = inc.projective_plane(q)
    assert P.size == q * q + q + 1
    assert P.check_axioms() == []


@pytest.mark.parametrize("q", inc.SUPPORTED_Q)
def test_levi_graph(q):
    g = inc.levi_graph(q)
    assert g.n == 2 * (q * q + q + 1) and set(g.degrees()) == {q + 1}
    assert gr.girth(g, [0]) == 6
    assert gr.bipartition(g) is not None
    cover = gr.kronecker_double_cover(inc.polarity_graph(q))
    assert cover.edges == g.edges


@pytest.mark.parametrize("q", [2, 3])
def test_levi_graph_against_networkx(q):
    h = to_nx(inc.levi_graph(q))
    assert nx.girth(h) == 6
    if q == 2:
        assert nx.is_isomorphic(h, nx.heawood_graph())


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_levi_kappa_is_one(q):
    # girth 6 rules out a 4-cycle, so the largest subcube is an edge
    assert sv.kappa_search(inc.levi_graph(q), 4).value == 1


@pytest.mark.parametrize("q", inc.SUPPORTED_Q)
def test_polarity_absolute_points(q):
    g = inc.polarity_graph(q)
    assert len(g.loops) == q + 1
    assert all(g.degree(v) == q + 1 for v in range(g.n))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8])
def test_difference_sets(q):
    N = q * q + q + 1
    D = inc.perfect_difference_set(q)
    assert len(D) == q + 1 and inc.is_difference_set(D, N)
    assert D[:2] == [0, 1]
    sd = inc.singer_cycle(q)
    assert inc.is_difference_set(sd.diff_set, N)


def test_difference_set_examples():
    assert inc.perfect_difference_set(2) == [0, 1, 3]
    assert inc.is_difference_set([1, 2, 4], 7)
    assert not inc.is_difference_set([0, 1, 2], 7)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8])
def test_dihedrant_bijection(q):
    d = inc.dihedrant_levi(q)
    assert d.verify()
    assert gr.is_isomorphism(d.graph, d.levi, d.mapping)


def test_dihedrant_levi_range():
    with pytest.raises(inc.IncidenceError):
        inc.dihedrant_levi(9)


def test_legendre():
    for p in (5, 13, 17):
        squares = {x * x % p for x in range(1, p)}
        for a in range(1, p):
            assert inc.legendre(a, p) == (1 if a in squares else -1)


@pytest.mark.parametrize("p", [5, 13, 17, 29])
def test_lps_quadruples(p):
    quads = inc.lps_quadruples(p)
    assert len(quads) == p + 1
    for a in quads:
        assert sum(x * x for x in a) == p and a[0] > 0 and a[0] % 2 == 1
        assert all(x % 2 == 0 for x in a[1:])


def test_lps_small_instance():
    X = inc.lps_graph(13, 5)
    g = X.graph
    assert X.legendre == -1 and X.bipartite
    assert g.n == 120 and set(g.degrees()) == {14}
    assert gr.is_connected(g)
    s = sp.ndl_summary(g)
    assert s.lam <= 2 * math.sqrt(13) + 1e-9


def test_lps_psl_instance_and_y_graph():
    X = inc.lps_graph(17, 13)
    assert X.legendre == 1 and not X.bipartite and X.graph.n == 1092
    assert X.girth() >= X.girth_bound()
    Y = inc.y_graph(17, 13)
    assert Y.n == 2184 and gr.bipartition(Y) is not None


def test_y_mixing_bound():
    assert math.isclose(inc.y_mixing_bound(5), 3 - math.sqrt(5))


@pytest.mark.parametrize("p,q", [(5, 5), (3, 13), (5, 7), (5, 3), (4, 13), (29, 5), (5, 17)])
def test_lps_rejects_bad_parameters(p, q):
    with pytest.raises(inc.IncidenceError):
        inc.lps_graph(p, q)
