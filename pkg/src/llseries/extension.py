"""Column-by-column construction of exact extensions of a refined series.

Column i = 0 is forced: V_0l = K_0l.  For i = 1, ..., d-1 the cells are
filled from l = d-i down to l = 0.  With the neighbours

    d' = (i-1, l-1)    d'' = (i-1, l)    d''' = (i, l+1)

each cell starts from a forced base (the images of V_d' and/or V_d''') and
adds beta free vectors v_k in K_il whose images under the map to d'' complete
V_d''^{X2^c,0} + V_d''^{X3^c,0} to V_d''^{X1,0}.  The last cell (d, 0) is
forced to K_d0, which must equal V_X1.

Every equality the construction relies on is checked as it goes; a failed
check raises :class:`ExtensionError`, which always means a bug upstream.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from .curve import ambient, complement, vanishing_part
from .field import PrimeField
from .instances import extreme_space
from .kernels import KernelGrid, RefinedSeries
from .linalg import (
    Matrix,
    Subspace,
    combine,
    complement_basis,
    iter_subspaces,
    lift,
    map_image,
)
from .report import Report
from .transfer import edges, transfer


class ExtensionError(RuntimeError):
    pass


class ReplayError(ExtensionError):
    pass


@dataclass(frozen=True)
class ChoiceStrategy:
    """How the free vectors of each cell are picked.

    ``deterministic``: complement by the canonical-basis scan, lifts with
    free variables zero.  ``seeded``: the complement is mixed by a random
    invertible upper-triangular matrix and every lift is moved by a random
    kernel element.  Cell (i, l) draws from PCG64 seeded with
    ``SeedSequence(entropy=seed, spawn_key=(i, l))``.
    """

    mode: str = "deterministic"
    seed: int | None = None

    def __post_init__(self):
        if self.mode not in ("deterministic", "seeded"):
            raise ValueError("strategy mode must be 'deterministic' or 'seeded'")
        if self.mode == "seeded" and self.seed is None:
            raise ValueError("a seeded strategy needs a seed")

    @classmethod
    def deterministic(cls) -> "ChoiceStrategy":
        return cls("deterministic", None)

    @classmethod
    def seeded(cls, seed: int) -> "ChoiceStrategy":
        return cls("seeded", int(seed))

    def rng(self, i: int, l: int) -> np.random.Generator | None:
        if self.mode == "deterministic":
            return None
        return np.random.default_rng(np.random.SeedSequence(entropy=self.seed, spawn_key=(i, l)))

    def to_json(self):
        return {"mode": self.mode, "seed": self.seed}


def scalar_sampler(field_):
    """rng -> random field scalar (small integers over Q, uniform over F_p)."""
    if isinstance(field_, PrimeField):
        return lambda rng: field_(int(rng.integers(0, field_.p)))
    return lambda rng: field_(int(rng.integers(-5, 6)))


@dataclass
class StepTrace:
    cell: tuple[int, int]
    case: str
    beta: int
    u: list = dc_field(default_factory=list)
    v: list = dc_field(default_factory=list)


class ExtensionGrid:
    """V_il at every grid point together with the trace of how it was chosen."""

    def __init__(self, h: RefinedSeries, V: dict, traces: list[StepTrace], strategy=None):
        self.h = h
        self.V = V
        self.traces = traces
        self.strategy = strategy

    def __getitem__(self, key) -> Subspace:
        return self.V[key]

    def same_as(self, other: "ExtensionGrid") -> bool:
        return self.V == other.V

    def differing_cells(self, other: "ExtensionGrid") -> list[tuple[int, int]]:
        return [key for key in self.V if self.V[key] != other.V[key]]

    def digest(self) -> str:
        """sha256 of the canonical bases, cell by cell in grid order."""
        fmt = self.h.field.format
        payload = [[key[0], key[1], [[fmt(x) for x in row] for row in self.V[key].basis]]
                   for key in sorted(self.V)]
        return hashlib.sha256(json.dumps(payload, separators=(",", ":")).encode()).hexdigest()


# A chooser gets (cell, base, inner, outer, down, K) and returns (u's, v's):
# u's complete inner to outer, v's lie in K and map onto the u's under down.
Chooser = Callable[[tuple, Subspace, Subspace, Subspace, Matrix, Subspace], tuple]


def _require(cond: bool, message: str, error=ExtensionError):
    if not cond:
        raise error(message)


def _img(h: RefinedSeries, V: dict, src: tuple, tgt: tuple) -> Subspace:
    m = transfer(h.curve, h.curve.md(*src), h.curve.md(*tgt))
    return map_image(m.matrix, V[src])


def _van(h: RefinedSeries, V: dict, key: tuple, components) -> Subspace:
    return vanishing_part(V[key], ambient(h.curve, h.curve.md(*key)), components)


def _pair_exact(h, V, low, high, q) -> bool:
    """Exactness of the edge between ``low`` and ``high`` = low.tilde(q)."""
    return (_img(h, V, low, high) == _van(h, V, high, {q})
            and _img(h, V, high, low) == _van(h, V, low, complement({q})))


def lift_in(down: Matrix, K: Subspace, u, rng=None, sample=None) -> tuple:
    """A vector of K mapped to ``u`` by ``down``; random kernel shift when rng is given."""
    basis = Matrix.from_columns(K.basis, K.ambient_dim, K.field)
    coeffs = lift(down @ basis, u, rng, sample)
    return combine(K.basis, coeffs, K.field)


def strategy_chooser(strategy: ChoiceStrategy, field_) -> Chooser:
    sample = scalar_sampler(field_)

    def choose(cell, base, inner, outer, down, K):
        us = complement_basis(inner, outer)
        rng = strategy.rng(*cell)
        if rng is not None and us:
            n = len(us)
            mixed = []
            for k in range(n):
                coeffs = [field_.zero] * n
                for j in range(k, n):
                    coeffs[j] = sample(rng)
                while coeffs[k] == 0:
                    coeffs[k] = sample(rng)
                mixed.append(combine(us, coeffs, field_))
            us = mixed
        vs = [lift_in(down, K, u, rng, sample) for u in us]
        return us, vs

    return choose


def _check_complement(us, inner: Subspace, outer: Subspace) -> bool:
    span = Subspace.span(list(inner.basis) + list(us), outer.ambient_dim, outer.field)
    return span == outer and span.dim == inner.dim + len(us)


def _build(h: RefinedSeries, kgrid: KernelGrid, choose: Chooser, strategy=None, error=ExtensionError) -> ExtensionGrid:
    d, r = h.d, h.r
    V: dict = {}
    traces: list[StepTrace] = []
    for l in range(d + 1):
        V[(0, l)] = kgrid[(0, l)]
        _require(V[(0, l)].dim == r + 1, "dim K_0%d = %d, expected r+1" % (l, V[(0, l)].dim), error)
        traces.append(StepTrace((0, l), "column0", 0))
    _check_column(h, V, 0, error)
    for i in range(1, d):
        for l in range(d - i, -1, -1):
            V[(i, l)], trace = _build_cell(h, kgrid, V, i, l, choose, error)
            traces.append(trace)
        _check_column(h, V, i, error)
    V[(d, 0)] = kgrid[(d, 0)]
    traces.append(StepTrace((d, 0), "assert-closure", 0))
    _require(V[(d, 0)] == extreme_space(h, 1), "K_d0 differs from V_X1", error)
    for i in range(d + 1):
        _require(V[(i, 0)] == kgrid[(i, 0)], "V_%d0 differs from K_%d0" % (i, i), error)
    _require(_pair_exact(h, V, (d, 0), (d - 1, 0), 1),
             "edge into (d, 0) is not exact", error)
    return ExtensionGrid(h, V, traces, strategy)


def _check_column(h, V, i, error):
    """Vertical exactness: every edge (i, l-1) -> (i, l) of column i is exact."""
    for l in range(1, h.d - i + 1):
        _require(_pair_exact(h, V, (i, l), (i, l - 1), 3),
                 "column %d is not vertically exact at l=%d" % (i, l), error)


def _build_cell(h, kgrid, V, i, l, choose: Chooser, error):
    d, r = h.d, h.r
    cell, d1, d2, d3 = (i, l), (i - 1, l - 1), (i - 1, l), (i, l + 1)
    use1 = l >= 1
    use3 = i + l <= d - 1
    case = "step2" if use1 and use3 else ("step1" if use1 else "step3")
    inner = _van(h, V, d2, complement({2})) + _van(h, V, d2, complement({3}))
    outer = _van(h, V, d2, {1})
    beta = outer.dim - inner.dim
    if case == "step1":
        _require(_van(h, V, d2, complement({2})).dim == 0, "V_d''^{X2^c,0} != 0 at %s" % (cell,), error)
    if case == "step3":
        _require(_van(h, V, d2, complement({3})).dim == 0, "V_d''^{X3^c,0} != 0 at %s" % (cell,), error)
    if use1:
        _require(_pair_exact(h, V, d2, d1, 3), "prerequisite (d', d'') not exact at %s" % (cell,), error)
    if use3:
        _require(_pair_exact(h, V, d2, d3, 2), "prerequisite (d'', d''') not exact at %s" % (cell,), error)
    n = h.curve.n
    base = Subspace.zero(n, h.field)
    if use1:
        base = base + _img(h, V, d1, cell)
    if use3:
        base = base + _img(h, V, d3, cell)
    if use1 and use3:
        _require(_img(h, V, d2, cell) == _img(h, V, d1, cell) & _img(h, V, d3, cell),
                 "image of V_d'' is not the intersection at %s" % (cell,), error)
    _require(base.dim == r + 1 - beta, "base has dim %d, expected %d at %s" % (base.dim, r + 1 - beta, cell), error)
    K = kgrid[cell]
    down = transfer(h.curve, h.curve.md(*cell), h.curve.md(*d2)).matrix
    us, vs = choose(cell, base, inner, outer, down, K)
    _require(len(us) == beta and _check_complement(us, inner, outer),
             "chosen u's do not complete V_d''^{X2^c,0} + V_d''^{X3^c,0} at %s" % (cell,), error)
    _require(all(K.contains(v) and down.apply(v) == tuple(u) for u, v in zip(us, vs)),
             "chosen v's are not lifts in K at %s" % (cell,), error)
    Vd = base + Subspace.span(vs, n, h.field)
    V[cell] = Vd
    _require(Vd.dim == r + 1, "V at %s has dim %d" % (cell, Vd.dim), error)
    _require(Vd <= K, "V at %s is not inside K" % (cell,), error)
    _require(_pair_exact(h, V, cell, d2, 1), "edge (d'', d) not exact at %s" % (cell,), error)
    if use1:
        _require(_pair_exact(h, V, d1, cell, 2), "edge (d', d) not exact at %s" % (cell,), error)
    if use3:
        _require(_pair_exact(h, V, d3, cell, 3), "edge (d, d''') not exact at %s" % (cell,), error)
    return Vd, StepTrace(cell, case, beta, [tuple(u) for u in us], [tuple(v) for v in vs])


def build_extension(h: RefinedSeries, strategy: ChoiceStrategy | None = None, kgrid: KernelGrid | None = None) -> ExtensionGrid:
    strategy = strategy or ChoiceStrategy.deterministic()
    kgrid = kgrid or KernelGrid(h)
    return _build(h, kgrid, strategy_chooser(strategy, h.field), strategy)


def verify_exact(grid: ExtensionGrid, kgrid: KernelGrid | None = None) -> Report:
    """Exactness on every edge in both directions, dim r+1 and V inside K everywhere."""
    h = grid.h
    kgrid = kgrid or KernelGrid(h)
    report = Report()
    V = grid.V
    for key in h.curve.points():
        report.add("dim", key, V[key].dim == h.r + 1, dim=V[key].dim)
        report.add("inside_K", key, V[key] <= kgrid[key])
    for md, q, other in edges(h.curve):
        a, b = md.key, other.key
        report.add("exact_down", a, _img(h, V, a, b) == _van(h, V, b, {q}), q=q, target=list(b))
        report.add("exact_up", a, _img(h, V, b, a) == _van(h, V, a, complement({q})), q=q, target=list(b))
    return report


def verify_extends(grid: ExtensionGrid) -> bool:
    h = grid.h
    d = h.d
    return (grid.V[(d, 0)] == extreme_space(h, 1)
            and grid.V[(0, 0)] == extreme_space(h, 2)
            and grid.V[(0, d)] == extreme_space(h, 3))


def replay_extension(grid_external: ExtensionGrid | dict, h: RefinedSeries, kgrid: KernelGrid | None = None) -> ExtensionGrid:
    """Rebuild an exact extension from choices read off the grid itself.

    At each cell the v's are a complement of the forced base inside the given
    V, and the u's are their images.  Any failure raises :class:`ReplayError`.
    """
    target = grid_external.V if isinstance(grid_external, ExtensionGrid) else grid_external
    kgrid = kgrid or KernelGrid(h)
    missing = [key for key in h.curve.points() if key not in target]
    _require(not missing, "grid has no subspace at %s" % (missing[:3],), ReplayError)

    def choose(cell, base, inner, outer, down, K):
        given = target[cell]
        _require(base <= given, "forced part is not contained in the given V at %s" % (cell,), ReplayError)
        vs = complement_basis(base, given)
        return [down.apply(v) for v in vs], vs

    rebuilt = _build(h, kgrid, choose, None, ReplayError)
    for key in h.curve.points():
        _require(rebuilt.V[key] == target[key], "replay differs from the given grid at %s" % (key,), ReplayError)
    return rebuilt


def cell_options(h, kgrid, V, i, l) -> list[Subspace]:
    """Every admissible V at (i, l) given the earlier cells (prime fields only).

    These are the (r+1)-dimensional subspaces of K_il that contain the forced
    base and map onto V_d''^{X1,0}.
    """
    d = h.d
    cell, d1, d2, d3 = (i, l), (i - 1, l - 1), (i - 1, l), (i, l + 1)
    n = h.curve.n
    base = Subspace.zero(n, h.field)
    if l >= 1:
        base = base + _img(h, V, d1, cell)
    if i + l <= d - 1:
        base = base + _img(h, V, d3, cell)
    outer = _van(h, V, d2, {1})
    down = transfer(h.curve, h.curve.md(*cell), h.curve.md(*d2)).matrix
    out = []
    for W in iter_subspaces(kgrid[cell], h.r + 1):
        if base <= W and map_image(down, W) == outer:
            out.append(W)
    return out


def enumerate_extensions(h: RefinedSeries, limit: int = 10000) -> list[ExtensionGrid]:
    """All grids the construction can produce, by exhaustive per-cell choice.

    Only for prime fields and tiny cases; stops after ``limit`` grids.
    """
    if not isinstance(h.field, PrimeField):
        raise ValueError("exhaustive enumeration needs a prime field")
    kgrid = KernelGrid(h)
    d = h.d
    order = [(i, l) for i in range(1, d) for l in range(d - i, -1, -1)]
    start = {(0, l): kgrid[(0, l)] for l in range(d + 1)}
    found: list[ExtensionGrid] = []

    def walk(pos: int, V: dict):
        if len(found) >= limit:
            return
        if pos == len(order):
            full = dict(V)
            full[(d, 0)] = kgrid[(d, 0)]
            found.append(ExtensionGrid(h, full, [], None))
            return
        i, l = order[pos]
        for W in cell_options(h, kgrid, V, i, l):
            V[(i, l)] = W
            walk(pos + 1, V)
            del V[(i, l)]

    walk(0, start)
    return found
