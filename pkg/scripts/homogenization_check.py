"""Compare secant dimensions of the scroll with profile (0, 1, ..., d) in m
variables with those of the degree-d Veronese in m + 1 variables.

Both live in spaces of the same dimension, but the Veronese is a proper
subvariety of the scroll, so its dimensions are only a lower bound.

    python3 scripts/homogenization_check.py --r-max 6
"""
from __future__ import annotations

import argparse

from scrollrank.terracini import generic_rank_probe, secant_sweep


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--d", type=int, nargs="+", default=[3, 4])
    ap.add_argument("--r-max", type=int, default=6)
    args = ap.parse_args(argv)
    print("m,d,profile,dims,generic_rank")
    for m in args.m:
        for d in args.d:
            for profile, mm in ((tuple(range(d + 1)), m), ((d,), m + 1)):
                dims = [p.measured_dim for p in secant_sweep(profile, mm, 1, args.r_max)]
                rank = generic_rank_probe(profile, mm)
                print(f'{mm},{d},"{profile}","{dims}",{rank}')


if __name__ == "__main__":
    main()
