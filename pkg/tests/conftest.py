import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from cayleysens import constructions as cons  # noqa: E402
from cayleysens import graph as gr  # noqa: E402
from cayleysens.groups import cayley_graph, group_make, random_connection_set  # noqa: E402
from cayleysens.incidence import levi_graph  # noqa: E402

ACCEPTANCE_LINES = []


def small_corpus():
    """Named loopless graphs with at most 16 vertices."""
    out = {
        "K2": gr.complete_graph(2),
        "P3": gr.path_graph(3),
        "P4": gr.path_graph(4),
        "K3": gr.complete_graph(3),
        "K4": gr.complete_graph(4),
        "C4": gr.cycle_graph(4),
        "C5": gr.cycle_graph(5),
        "C6": gr.cycle_graph(6),
        "C7": gr.cycle_graph(7),
        "Q3": gr.hypercube_graph(3),
        "Q4": gr.hypercube_graph(4),
        "petersen": gr.petersen_graph(),
        "prism5": gr.cartesian_product(gr.cycle_graph(5), gr.complete_graph(2)),
        "K3xK3": gr.cartesian_product(gr.complete_graph(3), gr.complete_graph(3)),
        "heawood": levi_graph(2),
        "mobius-kantor": cons.mobius_kantor(),
        "q3-k2bar": cons.q3_k2bar(),
        "z3^2": cons.z3r_graph(2)[1],
        "dihedrant-d1": cons.dihedrant_matching(1)[0],
    }
    for spec, size, seed in (("dihedral:6", 2, 1), ("cyclic:11", 2, 3), ("alternating:4", 2, 5),
                             ("elementary:2^3", 2, 7), ("pauli", 2, 11)):
        grp = group_make(spec)
        out[f"cay-{spec}-{seed}"] = cayley_graph(grp, random_connection_set(grp, size, seed))
    return out


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
