#!/usr/bin/env python3
"""Strategies per second of the exhaustive LHV search for a few worker counts."""
import argparse
import time

from quditbell.lhv import brute_force_max
from quditbell.quantum import Scenario

p = argparse.ArgumentParser(description=__doc__)
p.add_argument("--parties", type=int, default=4)
p.add_argument("--dim", type=int, default=6)
p.add_argument("--variant", default="1/4")
p.add_argument("--workers", type=int, nargs="+", default=[1, 2, 4])
args = p.parse_args()

s = Scenario(args.parties, args.dim, args.variant)
print(f"{s}: {s.strategy_count:,} strategies")
reference = None
for w in args.workers:
    t0 = time.perf_counter()
    res = brute_force_max(s, workers=w)
    dt = time.perf_counter() - t0
    same = reference is None or res == reference
    reference = reference or res
    print(f"workers={w:<3d} {dt:8.3f}s  {s.strategy_count / dt:14,.0f} strategies/s  "
          f"max={res.max_value:.12f}  argmax={res.argmax.alpha}/{res.argmax.beta}  same={same}")
