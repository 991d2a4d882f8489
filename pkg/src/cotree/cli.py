"""Command-line entry point.

Subcommands::

    cotree bench     # the four dictionary experiments over the roster
    cotree convert   # BFS -> vEB conversion microbenchmark
    cotree simulate  # LRU transfer counts for scan / search workloads

All emit CSV (``--out -`` for stdout).  Exit code 0 on success, 2 with a
one-line diagnostic otherwise.
"""

import argparse
import sys
from fractions import Fraction

from . import backends, bench


def _csv_list(text):
    return tuple(part.strip() for part in text.split(",") if part.strip())


def _int_list(text):
    return tuple(int(part) for part in _csv_list(text))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cotree",
        description="cache-oblivious search tree benchmarks")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bench", help="run the dictionary experiments")
    b.add_argument("--experiments", type=_csv_list,
                   default=bench.EXPERIMENTS,
                   help="comma list, default all four")
    b.add_argument("--structures", type=_csv_list,
                   default=bench.DEFAULT_STRUCTURES,
                   help="comma list of roster ids (add sortedlist "
                        "explicitly; it is quadratic-ish at large n)")
    b.add_argument("--min-exp", type=int, default=10)
    b.add_argument("--max-exp", type=int, default=22)
    b.add_argument("--seed", type=_int_list, default=(0,),
                   help="comma list of seeds")
    b.add_argument("--tau1", type=Fraction, default=Fraction(1, 2),
                   help="small-tree density parameter, e.g. 1/2 or 0.7")
    b.add_argument("--order", type=_int_list, default=(2, 16),
                   help="B-tree orders to put on the roster")
    b.add_argument("--conversion", default="constmem",
                   choices=backends.VARIANTS)
    b.add_argument("--backend", default="auto",
                   choices=("auto", "c", "py"))
    b.add_argument("--repeat", type=int, default=1,
                   help="timed runs per cell; median is reported")
    b.add_argument("--progress", action="store_true",
                   help="echo each cell to stderr")
    b.add_argument("--out", default="-", help="CSV path, - for stdout")

    c = sub.add_parser("convert", help="index-conversion microbenchmark")
    c.add_argument("--variants", type=_csv_list, default=backends.VARIANTS)
    c.add_argument("--min-height", type=int, default=2)
    c.add_argument("--max-height", type=int, default=30)
    c.add_argument("--reps", type=int, default=100000,
                   help="conversions per (variant, height) cell")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--backend", default="auto",
                   choices=("auto", "c", "py"))
    c.add_argument("--repeat", type=int, default=1)
    c.add_argument("--out", default="-")

    s = sub.add_parser("simulate", help="LRU memory-transfer counts")
    s.add_argument("--workloads", type=_csv_list, default=bench.WORKLOADS)
    s.add_argument("--n", type=int, default=2 ** 20 - 1)
    s.add_argument("--block", type=int, default=64,
                   help="elements per block (power of two)")
    s.add_argument("--cache-blocks", type=int, default=16,
                   help="resident blocks")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--probes", type=int, default=1000,
                   help="random search keys for the tree workloads")
    s.add_argument("--out", default="-")
    return parser


def _write(records, out, header):
    if out == "-":
        bench.write_csv(records, sys.stdout, header)
    else:
        bench.write_csv(records, out, header)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "bench":
            config = bench.SweepConfig(
                experiments=args.experiments,
                structures=args.structures,
                min_exp=args.min_exp,
                max_exp=args.max_exp,
                seeds=args.seed,
                tau1=args.tau1,
                orders=args.order,
                conversion=args.conversion,
                backend=args.backend,
                repeat=args.repeat,
            )
            records = bench.sweep(config, progress=args.progress)
            _write(records, args.out, bench.CSV_HEADER)
        elif args.command == "convert":
            if args.min_height < 1 or args.min_height > args.max_height:
                raise ValueError(f"bad height range "
                                 f"{args.min_height}..{args.max_height}")
            records = []
            for variant in args.variants:
                for height in range(args.min_height, args.max_height + 1):
                    records.append(bench.run_convert_bench(
                        variant, height, args.reps, args.seed,
                        args.backend, args.repeat))
            _write(records, args.out, bench.CSV_HEADER)
        else:
            results = [bench.simulate(w, args.n, args.block,
                                      args.cache_blocks, args.seed,
                                      args.probes)
                       for w in args.workloads]
            _write(results, args.out, bench.SIM_CSV_HEADER)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
