"""Deciding whether a refined series has a unique exact extension.

The region R(h) collects the grid points (i, l) with b_{j-1} < i <= b_j,
b'_{k-1} < l <= b'_k and j + k <= r + 1 (with b_{-1} = b'_{-1} = -1).  The
extension is unique exactly when dim K_il = r+1 on R(h), which is also
exactly when dim V2(-iA-lB) = r+1-j-k there (chain adaptability).  Both
tests are run independently and a seed sweep of the builder corroborates
the verdict.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curve import ambient, twist, vanishing_part, vanishing_sequence
from .extension import ChoiceStrategy, ExtensionGrid, build_extension
from .kernels import KernelGrid, RefinedSeries, interval_index
from .report import Report


class UniquenessError(RuntimeError):
    pass


def region(h: RefinedSeries) -> list[tuple[int, int, int, int]]:
    """(i, l, j, k) for every point of R(h), in grid order."""
    out = []
    for i, l in h.curve.points():
        j = interval_index(h.b, i)
        k = interval_index(h.bp, l)
        if j is not None and k is not None and j + k <= h.r + 1:
            out.append((i, l, j, k))
    return out


def in_region(h: RefinedSeries, i: int, l: int) -> bool:
    return any(p[:2] == (i, l) for p in region(h))


def dim_condition_failures(h: RefinedSeries, kgrid: KernelGrid) -> list[tuple[int, int, int]]:
    return [(i, l, kgrid.dim(i, l)) for i, l, _, _ in region(h) if kgrid.dim(i, l) != h.r + 1]


def dim_condition(h: RefinedSeries, kgrid: KernelGrid | None = None) -> bool:
    """dim K_il = r+1 at every point of R(h)."""
    kgrid = kgrid or KernelGrid(h)
    return not dim_condition_failures(h, kgrid)


def chain_adaptable(h: RefinedSeries) -> bool:
    """dim V2(-iA-lB) = r+1-j-k at every point of R(h)."""
    return all(twist(h.V2, i, l).dim == h.r + 1 - j - k for i, l, j, k in region(h))


@dataclass
class Verdict:
    unique: bool
    region: list
    failures: list
    corroboration: dict

    def to_json(self) -> dict:
        return {
            "unique": self.unique,
            "region": [[i, l] for i, l, _, _ in self.region],
            "failures": [list(f) for f in self.failures],
            "corroboration": self.corroboration,
        }


def seed_sweep(h: RefinedSeries, trials: int, seed: int, kgrid: KernelGrid) -> list[tuple[int, ExtensionGrid]]:
    """Builds with seeds seed, seed+1, ..., seed+trials-1."""
    return [(seed + t, build_extension(h, ChoiceStrategy.seeded(seed + t), kgrid)) for t in range(trials)]


def decide_unique(h: RefinedSeries, trials: int = 10, seed: int = 0, kgrid: KernelGrid | None = None) -> Verdict:
    """Verdict from the dimension condition, corroborated by chain adaptability and a seed sweep.

    Disagreement between the two tests, or distinct grids under a unique
    verdict, raises :class:`UniquenessError`.  A non-unique verdict with no
    pair of distinct grids is reported as "no witness found".
    """
    kgrid = kgrid or KernelGrid(h)
    failures = dim_condition_failures(h, kgrid)
    unique = not failures
    adaptable = chain_adaptable(h)
    if adaptable != unique:
        raise UniquenessError("dimension condition (%s) and chain adaptability (%s) disagree" % (unique, adaptable))
    base = build_extension(h, ChoiceStrategy.deterministic(), kgrid)
    sweep = seed_sweep(h, trials, seed, kgrid)
    digests = {}
    for s, g in [(None, base)] + sweep:
        digests.setdefault(g.digest(), (s, g))
    witness = None
    if len(digests) > 1:
        (s1, g1), (s2, g2) = list(digests.values())[:2]
        witness = {
            "seeds": [s1, s2],
            "digests": [g1.digest(), g2.digest()],
            "cells": [list(c) for c in g1.differing_cells(g2)],
        }
    if unique and witness is not None:
        raise UniquenessError("unique verdict but the builder produced distinct grids at %s" % witness["cells"])
    if unique:
        status = "all-identical"
    elif witness is not None:
        status = "witness-found"
    else:
        status = "no witness found"
    corroboration = {
        "chain_adaptable": adaptable,
        "trials": trials,
        "seeds": [seed + t for t in range(trials)],
        "distinct_grids": len(digests),
        "status": status,
        "witness": witness,
    }
    return Verdict(unique, region(h), failures, corroboration)


def check_vanishes_on_x2(h: RefinedSeries, grid: ExtensionGrid) -> Report:
    """V = V^{X2,0} wherever i > b_{j-1} and l > b'_{r-j}, for j = 1..r."""
    report = Report()
    r = h.r
    for j in range(1, r + 1):
        for i, l in h.curve.points():
            if i > h.b[j - 1] and l > h.bp[r - j]:
                V = grid[(i, l)]
                van = vanishing_part(V, ambient(h.curve, h.curve.md(i, l)), {2})
                report.add("vanishes_on_x2", (i, l), V == van, j=j)
    return report


def check_twisted_orders(h: RefinedSeries) -> Report:
    """V2(-b_j A) has orders b'_0..b'_{r-j} at B; V2(-b'_k B) has b_0..b_{r-k} at A."""
    report = Report()
    r = h.r
    for j in range(r + 1):
        seq = vanishing_sequence(twist(h.V2, h.b[j], 0), "B")
        report.add("twisted_orders_B", None, seq == h.bp[: r - j + 1], j=j, orders=list(seq))
    for k in range(r + 1):
        seq = vanishing_sequence(twist(h.V2, 0, h.bp[k]), "A")
        report.add("twisted_orders_A", None, seq == h.b[: r - k + 1], k=k, orders=list(seq))
    return report


def dim_condition_at_index(h: RefinedSeries, kgrid: KernelGrid, j: int) -> bool:
    """dim K_il = r+1 on the points of R(h) whose A-index is j."""
    return all(kgrid.dim(i, l) == h.r + 1 for i, l, jj, _ in region(h) if jj == j)


def check_top_order_at_b(h: RefinedSeries, kgrid: KernelGrid | None = None) -> Report:
    """Where the dimension condition holds for a fixed j, V2(-b_j A) has top order b'_{r-j} at B."""
    kgrid = kgrid or KernelGrid(h)
    report = Report()
    r = h.r
    for j in range(1, r + 1):
        if not dim_condition_at_index(h, kgrid, j):
            continue
        top = vanishing_sequence(twist(h.V2, h.b[j], 0), "B")[-1]
        report.add("top_order_at_B", None, top == h.bp[r - j], j=j, top=top, expected=h.bp[r - j])
    return report


def check_region_sanity(h: RefinedSeries) -> Report:
    """b_j + b'_{r-j} <= d and (b_j, b'_{r-j}) lies in R(h)."""
    report = Report()
    r = h.r
    points = {p[:2] for p in region(h)}
    for j in range(r + 1):
        i, l = h.b[j], h.bp[r - j]
        report.add("region_sanity", (i, l), i + l <= h.d and (i, l) in points, j=j)
    return report
