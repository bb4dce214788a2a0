"""Regenerate the three results tables into results/<name>.txt."""

import argparse
import contextlib
import io
from pathlib import Path

from cayleysens import cli


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--budget", default="60s", help="per-row solver budget")
    ap.add_argument("--out", default="results")
    ap.add_argument("--only", choices=tuple(cli.TABLES))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in [args.only] if args.only else cli.TABLES:
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = cli.main(["table", name, "--budget", args.budget])
        (out / f"{name}.txt").write_text(buf.getvalue())
        print(buf.getvalue(), end="")
        print(f"[{name}] exit {code}")


if __name__ == "__main__":
    main()
