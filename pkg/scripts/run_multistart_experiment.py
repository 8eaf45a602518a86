#!/usr/bin/env python3
"""Multi-start seesaw experiment.

Runs the seesaw from many seeds on the singlet and on a batch of random pure
states, reporting how tightly the 2*sqrt(2) ceiling is approached and how
often random states saturate interesting values.
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from bellkit import TSIRELSON, random_pure_state, seesaw_maximize, singlet


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, default=100, help="singlet multi-start count")
    parser.add_argument("--states", type=int, default=500, help="random-state batch size")
    parser.add_argument("--seed", type=int, default=0, help="seed for the state batch")
    args = parser.parse_args()

    print(f"== singlet, {args.seeds} seeds ==")
    values = []
    t0 = time.perf_counter()
    for seed in range(args.seeds):
        values.append(abs(seesaw_maximize(singlet(), seed=seed).best_s))
    elapsed = time.perf_counter() - t0
    values = np.array(values)
    print(f"target 2*sqrt(2) = {TSIRELSON:.12f}")
    print(f"min |S| = {values.min():.12f}   max |S| = {values.max():.12f}")
    print(f"runs within 1e-4 of the ceiling: {(values >= TSIRELSON - 1e-4).sum()}/{args.seeds}")
    print(f"total time {elapsed * 1e3:.1f} ms ({elapsed / args.seeds * 1e3:.2f} ms/run)")

    print(f"\n== {args.states} random pure states ==")
    rng = np.random.default_rng(args.seed)
    best = np.array([
        abs(seesaw_maximize(random_pure_state(rng), seed=k).best_s)
        for k in range(args.states)
    ])
    print(f"max over batch  = {best.max():.12f} (ceiling excess {best.max() - TSIRELSON:+.2e})")
    print(f"median          = {np.median(best):.6f}")
    print(f"share above 2   = {(best > 2.0 + 1e-9).mean():.1%}  "
          "(states whose best settings beat every local model)")
    hist, edges = np.histogram(best, bins=np.linspace(2.0, TSIRELSON, 9))
    for lo, hi, count in zip(edges[:-1], edges[1:], hist):
        bar = "#" * int(math.ceil(60 * count / max(1, hist.max())))
        print(f"  [{lo:.3f}, {hi:.3f})  {count:4d}  {bar}")


if __name__ == "__main__":
    main()
