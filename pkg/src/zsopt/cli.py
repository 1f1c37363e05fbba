"""Command-line entry point: ``zsopt run|stats|list|oracle``."""
from __future__ import annotations

import argparse
import logging
import sys
import time

from . import engineering, harness, problems
from .core import ConfigurationError

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2


def _cmd_run(args) -> int:
    config = harness.load_config(args.config)
    out = args.out or config.results
    rows = harness.run_experiment(config, out=out, traces=args.traces, workers=args.workers)
    failed = sum(1 for r in rows if r.error)
    print(f"wrote {len(rows)} rows to {out}" + (f" ({failed} failed)" if failed else ""))
    return EXIT_RUNTIME if failed else EXIT_OK


def _cmd_stats(args) -> int:
    table = harness.stats_report(args.results, args.reference, out_prefix=args.out, alpha=args.alpha)
    sys.stdout.write(harness.format_table(table))
    return EXIT_OK


def _cmd_list(args) -> int:
    if args.what == "problems":
        for tag, entry in problems.CATALOG.items():
            kind = "rotated" if entry.rotated else "shifted"
            print(f"{tag:<12} {entry.base:<30} bias={entry.bias:g} {kind}")
        for name in engineering.NAMES:
            dim, m = engineering.TABLE[name]
            print(f"{name:<12} {'engineering':<30} D={dim} m={m}")
    else:
        for tag in harness.ALGORITHMS:
            print(tag)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    t0 = time.perf_counter()
    value, point = engineering.gtd_grid_minimum()
    elapsed = time.perf_counter() - t0
    print(f"gear train grid minimum {value:.6e} at {point} "
          f"({engineering.GTD_HIGH - engineering.GTD_LOW + 1}^4 grid, {elapsed:.2f} s)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zsopt", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute an experiment matrix")
    run.add_argument("--config", required=True)
    run.add_argument("--workers", type=int)
    run.add_argument("--out")
    run.add_argument("--traces")
    run.set_defaults(func=_cmd_run)

    st = sub.add_parser("stats", help="compare algorithms in a results CSV")
    st.add_argument("--results", required=True)
    st.add_argument("--reference", required=True)
    st.add_argument("--out", help="output prefix (default: results path without suffix)")
    st.add_argument("--alpha", type=float, default=0.05)
    st.set_defaults(func=_cmd_stats)

    ls = sub.add_parser("list", help="list problem or algorithm tags")
    ls.add_argument("what", choices=["problems", "algorithms"])
    ls.set_defaults(func=_cmd_list)

    orc = sub.add_parser("oracle", help="run a brute-force reference computation")
    orc.add_argument("which", choices=["gtd"])
    orc.set_defaults(func=_cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:
        print(f"runtime error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
