#!/usr/bin/env python3
"""Scaling table for the mirrored-staircase pair: the sup landscape
distance stays at 1 while the bottleneck distance grows as 2n+1, so the
ratio can be pushed below any positive bound.

Usage: python scripts/counterexample_scaling.py [N_MAX] [--csv out.csv]
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from plsc.analysis import sup_distance
from plsc.benchgen import counterexample_pair
from plsc.diagram import bottleneck_distance
from plsc.landscape import landscape_of
from plsc.rational import format_rational


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("n_max", nargs="?", type=int, default=20)
    parser.add_argument("--csv", default=None)
    args = parser.parse_args()

    rows = []
    print(f"{'n':>4} {'sup_dist':>9} {'bottleneck':>11} {'ratio':>10} {'secs':>7}")
    for n in range(1, args.n_max + 1):
        t0 = time.perf_counter()
        d1, d2 = counterexample_pair(n)
        sup = sup_distance(landscape_of(d1), landscape_of(d2))
        bott = bottleneck_distance(d1, d2)
        dt = time.perf_counter() - t0
        ratio = sup / bott
        rows.append((n, sup, bott, ratio))
        print(f"{n:>4} {format_rational(sup):>9} {format_rational(bott):>11} "
              f"{format_rational(ratio):>10} {dt:>7.3f}")

    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write("n,sup_distance,bottleneck,ratio\n")
            for n, sup, bott, ratio in rows:
                fh.write(f"{n},{format_rational(sup)},{format_rational(bott)},"
                         f"{format_rational(ratio)}\n")
        print(f"wrote {args.csv}")


if __name__ == "__main__":
    main()
