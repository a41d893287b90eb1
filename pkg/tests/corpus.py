"""The instance corpus shared by the acceptance suite.

Three families: the two named fixtures, hand-checkable monomial instances,
an engineered family of non-adaptable instances (a non-reversed pairing of
the A and B orders of V2), and seeded random specs with random pairings.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from llseries.extension import ChoiceStrategy, build_extension
from llseries.instances import (
    SequenceSpec,
    adaptable_fixture,
    monomial_instance,
    random_refined,
    random_spec,
    witness_fixture,
)
from llseries.kernels import KernelGrid

CORPUS_SEED = 20240611
RANDOM_COUNT = 44
SEEDS = tuple(range(10))

MONOMIALS = [(4, (0, 4)), (4, (1, 3)), (2, (1,)), (6, (0, 3, 6)), (5, (1, 2, 4)), (8, (0, 2, 5, 8))]

# (d, r, b, b', pairing): every one of these has a non-unique extension.
WITNESS_FAMILY = [
    (4, 1, (0, 2), (0, 2), (0, 1)),
    (5, 1, (1, 2), (1, 2), (0, 1)),
    (6, 1, (0, 3), (0, 3), (0, 1)),
    (5, 1, (0, 2), (0, 3), (0, 1)),
    (6, 2, (0, 1, 3), (0, 1, 3), (0, 1, 2)),
    (8, 2, (0, 2, 4), (0, 2, 4), (0, 1, 2)),
    (7, 3, (0, 1, 2, 3), (0, 1, 2, 3), (0, 1, 2, 3)),
]


@dataclass
class Entry:
    name: str
    h: object
    fixture_witness: bool = False
    kgrid: KernelGrid | None = None
    builds: dict = field(default_factory=dict)

    def grid(self) -> KernelGrid:
        if self.kgrid is None:
            self.kgrid = KernelGrid(self.h)
        return self.kgrid

    def build(self, seed=None):
        """Deterministic build for seed None, seeded otherwise; cached."""
        if seed not in self.builds:
            strategy = ChoiceStrategy.deterministic() if seed is None else ChoiceStrategy.seeded(seed)
            self.builds[seed] = build_extension(self.h, strategy, self.grid())
        return self.builds[seed]


def make_corpus() -> list[Entry]:
    out = [
        Entry("adaptable_fixture", adaptable_fixture()),
        Entry("witness_fixture", witness_fixture(), fixture_witness=True),
    ]
    for d, exps in MONOMIALS:
        out.append(Entry("monomial_d%d_%s" % (d, "_".join(map(str, exps))), monomial_instance(d, exps)))
    for d, r, b, bp, pairing in WITNESS_FAMILY:
        h = random_refined(SequenceSpec(d, r, b, bp), 0, pairing=pairing)
        out.append(Entry("witness_d%d_r%d_b%s_bp%s" % (d, r, b, bp), h, fixture_witness=True))
    rng = np.random.default_rng(CORPUS_SEED)
    for k in range(RANDOM_COUNT):
        spec = random_spec(rng, d_max=10, r_max=4)
        out.append(Entry("random_%02d_d%d_r%d" % (k, spec.d, spec.r), random_refined(spec, CORPUS_SEED + k)))
    return out
