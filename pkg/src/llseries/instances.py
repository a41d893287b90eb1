"""Building and validating refined input series.

A spec fixes d, r and the two vanishing sequences of V2: b at A and b' at B.
The series on the outer components are then forced up to choice:
V1 has orders a_j = d - b_{r-j} at A and V3 has orders c_k = d - b'_{r-k} at B.

``random_refined`` realizes V2 as the span of sections s_j supported on the
degree window [b_j, d - b'_{sigma(j)}] with nonzero end coefficients, for a
pairing sigma with b_j + b'_{sigma(j)} <= d.  Distinct bottom orders and
distinct top degrees make the two sequences come out exactly as prescribed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .curve import ChainCurve, alpha, ambient
from .field import QQ, PrimeField
from .kernels import RefinedSeries, SeriesError
from .linalg import Subspace, map_image, map_preimage
from .report import Report
from .transfer import composite, path_maps


@dataclass(frozen=True)
class SequenceSpec:
    d: int
    r: int
    b: tuple[int, ...]
    bp: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(self.b))
        object.__setattr__(self, "bp", tuple(self.bp))
        d, r = self.d, self.r
        if d < 1 or r < 0:
            raise SeriesError("need d >= 1 and r >= 0, got d=%d r=%d" % (d, r))
        for name, seq in (("b", self.b), ("b'", self.bp)):
            if len(seq) != r + 1:
                raise SeriesError("%s must have r+1 = %d entries, got %d" % (name, r + 1, len(seq)))
            if any(x < 0 or x > d for x in seq) or any(x >= y for x, y in zip(seq, seq[1:])):
                raise SeriesError("%s = %s is not strictly increasing inside [0, %d]" % (name, list(seq), d))
        for j in range(r + 1):
            for k in range(r + 1 - j):
                if self.b[j] + self.bp[k] > d:
                    raise SeriesError("b_%d + b'_%d = %d exceeds d = %d" % (j, k, self.b[j] + self.bp[k], d))

    @property
    def a(self) -> tuple[int, ...]:
        return tuple(self.d - self.b[self.r - j] for j in range(self.r + 1))

    @property
    def c(self) -> tuple[int, ...]:
        return tuple(self.d - self.bp[self.r - k] for k in range(self.r + 1))

    def pairings(self) -> list[tuple[int, ...]]:
        """All sigma with b_j + b'_{sigma(j)} <= d; the reversed one always qualifies."""
        r = self.r
        return [s for s in permutations(range(r + 1)) if all(self.b[j] + self.bp[s[j]] <= self.d for j in range(r + 1))]


def _mono(e: int, n: int, field) -> tuple:
    return tuple(field.one if k == e else field.zero for k in range(n))


def monomial_instance(d: int, exponents, field=QQ) -> RefinedSeries:
    """V2 = span{t^m_j}; V1, V3 spanned by the complementary monomials."""
    m = tuple(exponents)
    if any(x >= y for x, y in zip(m, m[1:])) or not m or m[0] < 0 or m[-1] > d:
        raise SeriesError("exponents must be strictly increasing inside [0, %d], got %s" % (d, list(m)))
    curve = ChainCurve(d, field)
    n = curve.n
    r = len(m) - 1
    spec = SequenceSpec(d, r, m, tuple(d - x for x in reversed(m)))
    V1 = Subspace.span([_mono(e, n, field) for e in spec.a], n, field)
    V2 = Subspace.span([_mono(e, n, field) for e in m], n, field)
    V3 = Subspace.span([_mono(e, n, field) for e in spec.c], n, field)
    return RefinedSeries(curve, V1, V2, V3)


def _sampler(field, rng: np.random.Generator, low: int = -5, high: int = 5):
    """Random field elements: small integers over Q, uniform residues over F_p."""
    if isinstance(field, PrimeField):
        return lambda nonzero=False: field(int(rng.integers(1 if nonzero else 0, field.p)))

    def sample(nonzero=False):
        while True:
            x = int(rng.integers(low, high + 1))
            if x or not nonzero:
                return field(x)
    return sample


def _window_poly(lo: int, hi: int, n: int, sample, field) -> tuple:
    """Polynomial with support in [lo, hi], nonzero coefficients at both ends."""
    out = [field.zero] * n
    for k in range(lo, hi + 1):
        out[k] = sample(nonzero=(k == lo or k == hi))
    return tuple(out)


def random_refined(spec: SequenceSpec, seed: int, field=QQ, pairing=None, max_attempts: int = 20) -> RefinedSeries:
    """A refined series with the sequences of ``spec``, reproducible from ``seed``.

    ``pairing`` is either a permutation sigma, ``"reversed"`` (sigma(j) = r-j)
    or None for a seeded choice among the admissible pairings.
    """
    curve = ChainCurve(spec.d, field)
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(0,)))
    n, r, d = curve.n, spec.r, spec.d
    options = spec.pairings()
    if pairing == "reversed":
        sigma = tuple(r - j for j in range(r + 1))
    elif pairing is None:
        sigma = options[int(rng.integers(len(options)))]
    else:
        sigma = tuple(pairing)
        if sigma not in options:
            raise SeriesError("pairing %s is not admissible for %s" % (list(sigma), spec))
    sample = _sampler(field, rng)
    for _ in range(max_attempts):
        V2 = Subspace.span([_window_poly(spec.b[j], d - spec.bp[sigma[j]], n, sample, field) for j in range(r + 1)], n, field)
        V1 = Subspace.span([_window_poly(e, d, n, sample, field) for e in spec.a], n, field)
        V3 = Subspace.span([_window_poly(e, d, n, sample, field) for e in spec.c], n, field)
        if V1.dim != r + 1 or V2.dim != r + 1 or V3.dim != r + 1:
            continue
        h = RefinedSeries(curve, V1, V2, V3)
        if (h.a, h.b, h.bp, h.c) == (spec.a, spec.b, spec.bp, spec.c):
            return h
    raise SeriesError("could not realize %s with seed %d after %d attempts" % (spec, seed, max_attempts))


def random_spec(rng: np.random.Generator, d_max: int = 10, r_max: int = 4) -> SequenceSpec:
    """A random admissible (d, r, b, b') with d <= d_max and r <= r_max."""
    d = int(rng.integers(1, d_max + 1))
    r = int(rng.integers(0, min(r_max, d) + 1))
    b = tuple(sorted(int(x) for x in rng.choice(d + 1, size=r + 1, replace=False)))
    bp = []
    for k in range(r + 1):
        lo = bp[-1] + 1 if bp else 0
        hi = d - b[r - k]
        bp.append(int(rng.integers(lo, hi + 1)))
    return SequenceSpec(d, r, b, tuple(bp))


def extreme_space(h: RefinedSeries, q: int) -> Subspace:
    """V_q as a subspace of the section space at its extreme multidegree."""
    d = h.d
    key = {1: (d, 0), 2: (0, 0), 3: (0, d)}[q]
    md = h.curve.md(*key)
    return map_preimage(alpha(h.curve, md, q), h.component(q))


def boundary_paths(d: int) -> dict[tuple[int, int], list[tuple[int, int]]]:
    """Walks between the extreme points (d,0), (0,0), (0,d) along the grid boundary."""
    bottom = [(d - s, 0) for s in range(d + 1)]
    left = [(0, s) for s in range(d + 1)]
    hyp = [(d, 0)]
    for s in range(1, d + 1):
        hyp.append((d - s, s - 1))
        hyp.append((d - s, s))
    return {(1, 2): bottom, (2, 3): left, (1, 3): hyp}


def validate(h: RefinedSeries) -> Report:
    """Dimensions, refinedness, order bounds and linking of the three extreme spaces."""
    report = Report()
    r, d = h.r, h.d
    n = h.curve.n
    dims = [h.component(q).dim for q in (1, 2, 3)]
    report.add("dims", None, all(x == r + 1 for x in dims), dims=dims, r=r)
    report.add("refined", None, h.is_refined(), a=list(h.a), b=list(h.b), bp=list(h.bp), c=list(h.c))
    bound = all(h.b[j] + h.bp[k] <= d for j in range(r + 1) for k in range(r + 1 - j))
    report.add("order_sum_bound", None, bound)
    extremes = {q: extreme_space(h, q) for q in (1, 2, 3)}
    ext_ok = all(extremes[q].dim == r + 1 for q in (1, 2, 3))
    report.add("extreme_dims", None, ext_ok, dims=[extremes[q].dim for q in (1, 2, 3)])
    for (p, q), path in boundary_paths(d).items():
        for src, tgt, walk in ((p, q, path), (q, p, path[::-1])):
            m = composite(path_maps(h.curve, walk), n, h.field)
            ok = map_image(m, extremes[src]) <= extremes[tgt]
            report.add("extreme_linking", None, ok, source=src, target=tgt)
    return report


def adaptable_fixture(field=QQ) -> RefinedSeries:
    """d=4, r=1, V2 = span{1, t^4}: the extension is unique."""
    return monomial_instance(4, (0, 4), field)


def witness_fixture(field=QQ) -> RefinedSeries:
    """d=4, r=1, V2 = span{t^2, 1 + t^4}: b = b' = (0, 2), not unique."""
    curve = ChainCurve(4, field)
    n = curve.n
    one = field.one
    V2 = Subspace.span([_mono(2, n, field), tuple(one if k in (0, 4) else field.zero for k in range(n))], n, field)
    V1 = Subspace.span([_mono(2, n, field), _mono(4, n, field)], n, field)
    V3 = Subspace.span([_mono(2, n, field), _mono(4, n, field)], n, field)
    return RefinedSeries(curve, V1, V2, V3)
