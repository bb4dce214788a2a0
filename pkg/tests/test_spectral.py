import math
import random

import numpy as np
import pytest

from cayleysens import graph as gr
from cayleysens import groups as grp
from cayleysens import incidence as inc
from cayleysens import solver as sv
from cayleysens import spectral as sp
from conftest import small_corpus

CORPUS = small_corpus()


def _with_loops():
    return {f"polarity-{q}": inc.polarity_graph(q) for q in (2, 3, 4, 5)}


@pytest.mark.parametrize("name", sorted(CORPUS) + sorted(_with_loops()))
def test_trace_identities(name):
    g = CORPUS.get(name) or _with_loops()[name]
    ev = np.array(sp.spectrum(g))
    assert abs(ev.sum() - len(g.loops)) <= 1e-6 * g.n
    assert abs((ev ** 2).sum() - (2 * g.m + len(g.loops))) <= 1e-6 * g.n


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_bipartite_spectrum_is_symmetric(name):
    g = CORPUS[name]
    if gr.bipartition(g) is None:
        return
    ev = np.array(sp.spectrum(g))
    assert np.allclose(np.sort(ev), np.sort(-ev), atol=1e-8)


def test_known_spectra():
    ev = sp.spectrum(gr.petersen_graph())
    assert np.allclose(sorted(set(np.round(ev, 8))), [-2, 1, 3])
    s = sp.ndl_summary(gr.hypercube_graph(4))
    assert s.bipartite and s.d == 4 and math.isclose(s.lam, 2, abs_tol=1e-9)
    c = sp.ndl_summary(gr.cycle_graph(7))
    assert math.isclose(c.lam, 2 * math.cos(math.pi / 7), abs_tol=1e-9)


@pytest.mark.parametrize("q", inc.SUPPORTED_Q)
def test_polarity_graph_second_eigenvalue(q):
    s = sp.ndl_summary(inc.polarity_graph(q))
    assert s.d == q + 1 and not s.bipartite
    assert math.isclose(s.lam, math.sqrt(q), abs_tol=1e-8)


def test_mixing_inequality_on_random_splits():
    rng = random.Random(7)
    graphs = [gr.petersen_graph(), inc.polarity_graph(3), inc.levi_graph(2),
              CORPUS["mobius-kantor"], gr.hypercube_graph(4)]
    for g in graphs:
        lam = sp.ndl_summary(g).lam
        for _ in range(20):
            size = rng.randrange(0, g.n + 1)
            S = rng.sample(range(g.n), size)
            # T may overlap S, only the sizes matter
            T = rng.sample(range(g.n), g.n - size)
            assert sp.mixing_inequality_holds(g, S, T, lam)


def test_mixing_inequality_size_precondition():
    with pytest.raises(ValueError):
        sp.mixing_inequality_holds(gr.petersen_graph(), [0], [1])


def test_edge_count_between_counts_loops():
    g = gr.Graph(3, [(0, 1), (1, 2)], loops=[1])
    assert sp.edge_count_between(g, [1], [1]) == 1
    assert sp.edge_count_between(g, [0, 1], [1, 2]) == 3


@pytest.mark.parametrize("q", [2, 3, 4])
def test_levi_sensitivity_beats_mixing_bound(q):
    b = sp.mixing_sensitivity_bound(inc.polarity_graph(q))
    res = sv.sensitivity(inc.levi_graph(q))
    assert res.exact and res.value > b.bound
    assert res.value >= b.implied_sigma


def test_mixing_bound_needs_nonbipartite_base():
    with pytest.raises(ValueError):
        sp.mixing_sensitivity_bound(gr.cycle_graph(6))


def test_ndl_rejects_irregular_or_disconnected():
    with pytest.raises(ValueError):
        sp.ndl_summary(gr.path_graph(4))
    with pytest.raises(ValueError):
        sp.ndl_summary(gr.Graph(4, [(0, 1), (2, 3)]))


def test_minimality_diagnostic():
    G = grp.group_make("cyclic:12")
    g = grp.cayley_graph(G, [G.find(x) for x in (1, 11, 2, 10, 3, 9, 5, 7)])
    rep = sp.minimality_diagnostic(g)
    assert rep.consistent and not rep.minimal
    h = grp.cayley_graph(G, [G.find(1), G.find(11)])
    rep = sp.minimality_diagnostic(h)
    assert rep.minimal and not rep.spectral_says_not_minimal
    assert "removable generators: none" in str(rep)


def test_dump_spectrum_format():
    text = sp.dump_spectrum(sp.spectrum(gr.cycle_graph(4)))
    lines = text.splitlines()
    assert len(lines) == 4 and math.isclose(float(lines[-1]), 2.0)
    assert sp.ndl_summary(gr.cycle_graph(5)).line().startswith("5 2 ")


def test_random_connection_sets_on_psl_expand():
    G = inc.lps_graph(17, 13).group
    size = math.ceil(2 * math.log(G.order))
    good = 0
    for seed in range(20):
        g = grp.cayley_graph(G, grp.random_connection_set(G, size, seed))
        if gr.is_connected(g) and sp.ndl_summary(g).lam < g.max_degree() - 1e-6:
            good += 1
    assert good >= 18
