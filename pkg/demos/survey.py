"""Uniqueness across random refined series.

Draws random sequence specs, realises each with a random pairing of the
A- and B-orders of V2, and tallies how often the exact extension is unique.
The dimension test and the chain-adaptability test are computed
independently and must agree on every instance.

    python demos/survey.py [count] [seed]
"""

import sys
from collections import Counter

import numpy as np

from llseries.instances import random_refined, random_spec
from llseries.kernels import KernelGrid
from llseries.uniqueness import chain_adaptable, decide_unique


def main(count=25, seed=1):
    rng = np.random.default_rng(seed)
    tally = Counter()
    for k in range(count):
        spec = random_spec(rng, d_max=8, r_max=3)
        h = random_refined(spec, seed * 1000 + k)
        kgrid = KernelGrid(h)
        verdict = decide_unique(h, trials=5, seed=k, kgrid=kgrid)
        assert verdict.unique == chain_adaptable(h)
        tally[verdict.unique] += 1
        print("d=%-2d r=%d b=%-14s b'=%-14s %s  distinct grids: %d"
              % (h.d, h.r, list(h.b), list(h.bp), "unique    " if verdict.unique else "not unique",
                 verdict.corroboration["distinct_grids"]))
    print("\n%d unique, %d not unique" % (tally[True], tally[False]))


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:]]
    main(*args)
