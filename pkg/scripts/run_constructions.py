"""Build every explicit construction, write graphs and certificates, verify them."""

import argparse

from cayleysens import cli

RUNS = [
    *(["dihedrant", "--d", str(d)] for d in range(5)),
    *(["star", "--n", str(n)] for n in (3, 4, 5, 6)),
    *(["tight", "--m", str(m)] for m in (1, 2, 3)),
    *(["hypercube", "--d", str(d)] for d in range(1, 11)),
    ["torus", "--n", "4", "--m", "4"], ["torus", "--n", "6", "--m", "4"],
    ["torus", "--n", "10", "--m", "6"],
    *(["z3r", "--r", str(r)] for r in range(1, 7)),
    *(["coxeter", "--type", t] for t in ("A2", "A3", "A4", "A5", "I5", "I2xI3xI3", "B3", "B4", "D4")),
    *(["levi", "--q", str(q)] for q in (2, 3, 4, 5, 7, 8)),
    *(["polarity", "--q", str(q)] for q in (2, 3, 4, 5, 7, 8)),
    ["lps", "--p", "13", "--q", "5"], ["lps", "--p", "5", "--q", "13"],
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="out")
    args = ap.parse_args()
    failed = []
    for run in RUNS:
        if cli.main(["build", *run, "--out", args.out]) != 0:
            failed.append(" ".join(run))
    print(f"{len(RUNS) - len(failed)}/{len(RUNS)} builds verified")
    for f in failed:
        print("FAILED:", f)
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
