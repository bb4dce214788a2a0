"""Command-line front end: build, solve, verify, table."""

from __future__ import annotations

import argparse
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import constructions as cons
from . import coxeter as cx
from . import incidence as inc
from . import solver as sv
from .graph import (Certificate, Graph, read_certificate, read_graph,
                    to_dot, verify_certificate, write_certificate, write_graph)
from .groups import cayley_graph, group_make, random_connection_set
from .spectral import mixing_sensitivity_bound

FAMILIES = ("dihedrant", "star", "tight", "coxeter", "torus", "z3r", "hypercube",
            "levi", "polarity", "lps", "group-cayley")

# published values, shown next to computed ones
PUBLISHED_KAPPA = {"A": lambda n: math.ceil(n / 2), "B": lambda n: math.ceil(n / 2),
               "D": lambda n: math.ceil((n + 1) / 2), "I": lambda n: 1,
               "E6": 3, "F4": 2, "H3": 2, "H4": 2}
PUBLISHED_REFLECTIONS = {"A": lambda n: n * (n + 1) // 2, "B": lambda n: n * n,
                     "D": lambda n: n * (n - 1), "I": lambda n: n,
                     "E6": 36, "F4": 12, "H3": 10, "H4": 30}
KAPPA_ROWS = ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "D4", "I3", "I4", "I5",
              "I6", "I7", "I8", "H3", "F4", "H4", "E6"]
# (descriptor, order, kappa, value or (lo, hi) with hi None when unbounded)
COXETER_SMALL = [
    ("F4", 1152, 2, 768), ("H3", 120, 2, 85), ("H4", 14400, 2, (8624, 9599)),
    ("E6", 51840, 3, (25926, None)), ("D4", 192, 3, (120, 122)),
    ("D5", 1920, 3, (1004, 1199)), ("B3", 48, 2, 34), ("B4", 384, 2, (235, 252)),
    ("B5", 3840, 3, (1976, 2398)), ("B3xI2", 192, 4, (98, 115)),
    ("B3xI3", 288, 3, (150, 175)), ("B3xI4", 384, 3, (200, 235)),
    ("I2xI3xI3", 144, 3, (73, 79)), ("I1xI2xI4", 64, 4, 33), ("I1xI3xI4", 96, 3, 52),
]
LEVI_SIGMA = {2: 2, 3: 2, 4: 2, 5: 3, 7: 3, 8: 4}
KAPPA_SEARCH_MAX = 2000
SMALL_TABLE_MAX = 4000


@dataclass
class CommandReport:
    command: str
    outputs: list[str] = field(default_factory=list)
    summary: list[str] = field(default_factory=list)
    exit_code: int = 0

    def emit(self, line: str) -> None:
        print(line, flush=True)
        self.summary.append(line)


# ---------------------------------------------------------------------- build

def _need(args, *names):
    for nm in names:
        if getattr(args, nm) is None:
            raise SystemExit(f"error: --{nm} is required for this family")


def _build_family(args) -> tuple[Graph, list[tuple[str, Certificate]], str]:
    """Returns (graph, [(tag, certificate)], parameter string)."""
    fam = args.family
    if fam == "dihedrant":
        _need(args, "d")
        g, c = cons.dihedrant_matching(args.d)
        return g, [("matching", c)], f"d{args.d}"
    if fam == "star":
        _need(args, "n")
        g, c = cons.star_graph_subset(args.n)
        return g, [("lowdeg", c)], f"n{args.n}"
    if fam == "tight":
        _need(args, "m")
        g, c = cons.tight_matching(args.m)
        return g, [("matching", c)], f"m{args.m}"
    if fam == "coxeter":
        _need(args, "type")
        sys_ = cx.coxeter_system(args.type)
        fams = sys_.factors
        if len(fams) == 1 and fams[0] in {("B", 3), ("B", 4), ("B", 5), ("D", 4), ("D", 5)}:
            # signed-permutation model of the same Cayley graph, with its construction
            g, c = cx.bn_dn_subset(*fams[0])
            return g, [("bndn", c)], args.type
        g = cx.coxeter_cayley(sys_)
        certs = []
        if sys_.order <= 2000 and cx.is_cube_like(sys_).cube_like:
            certs.append(("cubelike", cx.cube_like_subset(sys_)))
        return g, certs, args.type
    if fam == "torus":
        _need(args, "n", "m")
        g, c = cons.torus_subset(args.n, args.m)
        return g, [("lowdeg", c)], f"{args.n}x{args.m}"
    if fam == "z3r":
        _need(args, "r")
        g, c, ind = cons.z3r_subset(args.r)
        return g, [("lowdeg", c), ("independent", ind)], f"r{args.r}"
    if fam == "hypercube":
        _need(args, "d")
        g, c = cons.cfgs_subset(args.d)
        return g, [("cfgs", c)], f"d{args.d}"
    if fam == "levi":
        _need(args, "q")
        return inc.levi_graph(args.q), [], f"q{args.q}"
    if fam == "polarity":
        _need(args, "q")
        return inc.polarity_graph(args.q), [], f"q{args.q}"
    if fam == "lps":
        _need(args, "p", "q")
        return inc.lps_graph(args.p, args.q).graph, [], f"p{args.p}_q{args.q}"
    if fam == "group-cayley":
        _need(args, "group")
        grp = group_make(args.group)
        if args.gens:
            labels = {grp.label(x): x for x in range(grp.order)}
            try:
                conn = {labels[s.strip()] for s in args.gens.split(",")}
            except KeyError as exc:
                raise SystemExit(f"error: unknown element label {exc}")
            conn |= {grp.inv(x) for x in conn}
        else:
            if args.seed is None or args.k is None:
                raise SystemExit("error: random connection sets need --seed and --k (size)")
            conn = random_connection_set(grp, args.k, args.seed)
        tag = args.group.replace(":", "").replace(",", "_")
        extra = f"_seed{args.seed}" if not args.gens else ""
        return cayley_graph(grp, conn), [], tag + extra
    raise SystemExit(f"error: unknown family {fam!r}")


def cmd_build(args) -> CommandReport:
    rep = CommandReport(" ".join(sys.argv))
    g, certs, params = _build_family(args)
    outdir = Path(args.out) / args.family / params
    stem = f"{args.family}_{params}"
    gpath = write_graph(g, outdir / f"{stem}.graph")
    rep.outputs.append(str(gpath))
    rep.emit(f"graph {gpath} n={g.n} m={g.m} loops={len(g.loops)}")
    for tag, c in certs:
        v = verify_certificate(g, c)
        cpath = write_certificate(c, outdir / f"{stem}.{tag}.cert")
        rep.outputs.append(str(cpath))
        rep.emit(f"cert {cpath} kind={c.kind} k={c.k} size={c.size} {v}")
        if not v.valid:
            rep.exit_code = 1
    if args.dot:
        hl = certs[0][1].members if certs else ()
        dpath = outdir / f"{stem}.dot"
        dpath.write_text(to_dot(g, hl))
        rep.outputs.append(str(dpath))
    (outdir / "summary.txt").write_text("\n".join(rep.summary) + "\n")
    return rep


# ---------------------------------------------------------------------- solve

def _load(args) -> Graph:
    if not args.graph:
        raise SystemExit("error: --graph is required")
    g = read_graph(args.graph)
    if args.transitive:
        g.vertex_transitive = True
    return g


def _run_solver(param: str, g: Graph, args, budget: sv.SearchBudget) -> sv.SolveResult:
    if param == "sigma":
        return sv.sensitivity(g, budget=budget)
    if param == "alpha":
        return sv.independence_number(g, budget)
    if param == "iota":
        if args.k is None:
            raise SystemExit("error: iota needs --k")
        return sv.iota(g, args.k, budget)
    if param == "kappa":
        return sv.kappa_search(g, args.dmax, budget)
    if param == "delta-beta":
        if args.beta is None:
            raise SystemExit("error: delta-beta needs --beta")
        return sv.delta_beta(g, args.beta, budget)
    if param == "lowdeg":
        if args.k is None:
            raise SystemExit("error: lowdeg needs --k")
        return sv.max_low_degree_set(g, args.k, budget)
    raise SystemExit(f"error: unknown parameter {param!r}")


def cmd_solve(args) -> CommandReport:
    rep = CommandReport(" ".join(sys.argv))
    g = _load(args)
    budget = sv.SearchBudget.parse(args.budget)
    res = _run_solver(args.parameter, g, args, budget)
    rep.emit(res.summary())
    if res.witness is not None:
        v = verify_certificate(g, res.witness)
        out = Path(args.out) if args.out != "out" else Path(args.graph).parent
        cpath = write_certificate(res.witness, out / f"{Path(args.graph).stem}.{args.parameter}.cert")
        rep.outputs.append(str(cpath))
        rep.emit(f"witness {cpath} {v}")
        if not v.valid:
            rep.exit_code = 1
    return rep


# --------------------------------------------------------------------- verify

def cmd_verify(args) -> CommandReport:
    rep = CommandReport(" ".join(sys.argv))
    if not args.graph or not args.cert:
        raise SystemExit("error: verify needs --graph and --cert")
    g = read_graph(args.graph)
    try:
        c = read_certificate(args.cert)
    except ValueError as exc:
        rep.emit(f"INVALID: {exc}")
        rep.exit_code = 1
        return rep
    v = verify_certificate(g, c)
    rep.emit(f"{c.kind} k={c.k} size={c.size}: {v}")
    rep.exit_code = 0 if v.valid else 1
    return rep


# ---------------------------------------------------------------------- table

def _desc_key(desc: str):
    fams = cx.parse_descriptor(desc)
    if len(fams) != 1:
        return None, None
    f, n = fams[0]
    key = f"{f}{n}" if f in "EFH" else f
    return key, n


def _published(table, desc):
    key, n = _desc_key(desc)
    val = table.get(key)
    return val(n) if callable(val) else val


def _row_budget(args) -> sv.SearchBudget:
    """Per-row budget for tables; 60 s unless given."""
    return sv.SearchBudget.parse(args.budget or "60s")


def table_kappa(args, rep: CommandReport) -> None:
    budget = _row_budget(args)
    rep.emit("type order kappa(published) kappa(formula) kappa(search) r(published) r(computed)")
    for desc in KAPPA_ROWS:
        sys_ = cx.coxeter_system(desc)
        kf = cx.kappa_formula(sys_)
        if sys_.order <= KAPPA_SEARCH_MAX:
            res = sv.kappa_search(cx.coxeter_cayley(sys_), args.dmax, budget)
            ks = f"{res.value} {res.status}"
        else:
            ks = "skipped (budget)"
        rep.emit(f"{desc} {sys_.order} {_published(PUBLISHED_KAPPA, desc)} {kf} {ks} "
                 f"{_published(PUBLISHED_REFLECTIONS, desc)} {sys_.reflections}")


def _fmt_published(val) -> str:
    if isinstance(val, tuple):
        lo, hi = val
        return f"{lo}..{hi}" if hi is not None else f">={lo}"
    return str(val)


def table_coxeter_small(args, rep: CommandReport) -> None:
    budget = _row_budget(args)
    rep.emit("group order kappa k published / computed status")
    for desc, order, kappa_p, val in COXETER_SMALL:
        if order > SMALL_TABLE_MAX:
            rep.emit(f"{desc} {order} {kappa_p} - {_fmt_published(val)} / skipped (budget)")
            continue
        sys_ = cx.coxeter_system(desc)
        kappa = cx.kappa_formula(sys_)
        k = math.isqrt(kappa - 1) + 1
        g = cx.coxeter_cayley(sys_)
        res = sv.max_low_degree_set(g, k, budget)
        comp = res.value if res.status == "exact" else f"{res.lo}..{res.hi}"
        if res.witness is not None and not verify_certificate(g, res.witness).valid:
            rep.exit_code = 1
        rep.emit(f"{desc} {sys_.order} {kappa} {k} {_fmt_published(val)} / {comp} {res.status}")


def table_spectral_levi(args, rep: CommandReport) -> None:
    budget = _row_budget(args)
    rep.emit("q n d lambda bound implied_sigma>= sigma(published) sigma(computed)")
    for q in (2, 3, 4, 5, 7, 8):
        base = inc.polarity_graph(q)
        mb = mixing_sensitivity_bound(base)
        L = inc.levi_graph(q)
        res = sv.sensitivity(L, budget=budget)
        comp = res.value if res.exact else f"{res.lo}..{res.hi}"
        comp = f"{comp} {res.status}"
        rep.emit(f"{q} {L.n} {mb.d} {mb.lam:.9f} {mb.bound:.6f} {mb.implied_sigma} "
                 f"{LEVI_SIGMA[q]} {comp}")


TABLES = {"kappa": table_kappa, "coxeter-small": table_coxeter_small,
          "spectral-levi": table_spectral_levi}


def cmd_table(args) -> CommandReport:
    rep = CommandReport(" ".join(sys.argv))
    t0 = time.perf_counter()
    TABLES[args.name](args, rep)
    rep.emit(f"# {args.name} done in {time.perf_counter() - t0:.1f}s")
    return rep


# ----------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cayleysens",
                                 description="Sensitivity-type parameters of Cayley graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--budget", default=None, help='e.g. "600s", "1e7nodes" or "60s,1e6nodes"')
        p.add_argument("--out", default="out")
        p.add_argument("--seed", type=int, default=None)

    b = sub.add_parser("build", help="construct a graph (and its certificate)")
    b.add_argument("family", choices=FAMILIES)
    for nm in ("d", "n", "m", "q", "p", "k", "r"):
        b.add_argument(f"--{nm}", type=int)
    b.add_argument("--type", help='Coxeter descriptor such as "B3" or "I2xI3"')
    b.add_argument("--group", help='group spec such as "dihedral:5" or "pauli"')
    b.add_argument("--gens", help="comma-separated element labels")
    b.add_argument("--dot", action="store_true", help="also write a DOT file")
    common(b)
    b.set_defaults(func=cmd_build)

    s = sub.add_parser("solve", help="compute a parameter of a graph file")
    s.add_argument("parameter", choices=("sigma", "alpha", "iota", "kappa", "delta-beta", "lowdeg"))
    s.add_argument("--graph")
    s.add_argument("--k", type=int)
    s.add_argument("--beta", type=float)
    s.add_argument("--dmax", type=int, default=6)
    s.add_argument("--transitive", action="store_true",
                   help="declare the graph vertex-transitive (enables symmetry breaking)")
    common(s)
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a certificate against a graph")
    v.add_argument("--graph")
    v.add_argument("--cert")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="regenerate a results table")
    t.add_argument("name", choices=tuple(TABLES))
    t.add_argument("--dmax", type=int, default=6)
    common(t)
    t.set_defaults(func=cmd_table)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rep = args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
