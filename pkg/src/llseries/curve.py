"""A chain of three rational curves X1 - X2 - X3 and its multidegree grid.

Coordinates: on X1 the node A sits at t = 0; on X2, A is at u = 0 and B at
u = infinity; on X3, B is at v = 0.  A section of the line bundle of
multidegree (i, d-i-l, l) is a triple of polynomials (s1, s2, s3) with
deg s1 <= i, deg s2 <= d-i-l, deg s3 <= l, glued by

    s1(0) = s2(0)               (node A)
    top coefficient of s2 = s3(0)   (node B, s2 read in its degree chart)

The triple is stored as one "raw" coefficient vector (s1 low-to-high, then
s2, then s3).  The d+1 dimensional space of glued triples gets a fixed chart:
the two gluing equations are row-reduced and their pivot coordinates are
eliminated; the remaining raw coordinates are the chart coordinates.

Each component also has a "component space": polynomials of degree <= d in
the component's own variable.  The restriction maps ``alpha`` land there.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .field import QQ, PrimeField
from .linalg import Matrix, Subspace, ShapeError, combine, kernel_vectors, nullspace

COMPONENTS = (1, 2, 3)


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class ChainCurve:
    """The curve X = X1 u X2 u X3 with total degree ``d`` fixed."""

    d: int
    field: object = QQ

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 1:
            raise CurveError("total degree must be a positive integer, got %r" % (self.d,))
        if isinstance(self.field, PrimeField) and self.field.p <= self.d:
            raise CurveError("prime field needs p > d (p=%d, d=%d)" % (self.field.p, self.d))

    def md(self, i: int, l: int) -> "Multidegree":
        return Multidegree(self.d, i, l)

    def grid(self) -> list["Multidegree"]:
        """All valid multidegrees, ordered by i then l."""
        return [Multidegree(self.d, i, l) for i in range(self.d + 1) for l in range(self.d - i + 1)]

    def points(self) -> list[tuple[int, int]]:
        return [(i, l) for i in range(self.d + 1) for l in range(self.d - i + 1)]

    @property
    def n(self) -> int:
        """Dimension of every section space (and every component space)."""
        return self.d + 1


@dataclass(frozen=True, order=True)
class Multidegree:
    """The lattice point (i, d-i-l, l); ``m`` is the degree on X2."""

    d: int
    i: int
    l: int

    def __post_init__(self):
        if self.i < 0 or self.l < 0 or self.i + self.l > self.d:
            raise CurveError("invalid multidegree (%d, %d, %d)" % (self.i, self.d - self.i - self.l, self.l))

    @property
    def m(self) -> int:
        return self.d - self.i - self.l

    @property
    def degrees(self) -> tuple[int, int, int]:
        return (self.i, self.m, self.l)

    @property
    def key(self) -> tuple[int, int]:
        return (self.i, self.l)

    def __repr__(self):
        return "Multidegree(%d, %d, %d)" % self.degrees

    def tilde(self, q: int) -> "Multidegree | None":
        """Neighbour obtained by moving one unit of degree across X_q's nodes.

        Returns None when the neighbour has a negative entry.
        """
        i, l = self.i, self.l
        if q == 1:
            i, l = i - 1, l
        elif q == 2:
            i, l = i + 1, l + 1
        elif q == 3:
            i, l = i, l - 1
        else:
            raise CurveError("component must be 1, 2 or 3, got %r" % (q,))
        if i < 0 or l < 0 or i + l > self.d:
            return None
        return Multidegree(self.d, i, l)


def _poly(coeffs: Sequence, length: int, field) -> list:
    out = [field(x) for x in coeffs]
    if len(out) > length:
        if any(x != 0 for x in out[length:]):
            raise ShapeError("polynomial does not fit in %d coefficients" % length)
        out = out[:length]
    return out + [field.zero] * (length - len(out))


class SectionSpace:
    """H^0(X, L_md) in its fixed chart; see the module docstring."""

    def __init__(self, curve: ChainCurve, md: Multidegree):
        if md.d != curve.d:
            raise CurveError("multidegree of total degree %d on a degree-%d curve" % (md.d, curve.d))
        self.curve = curve
        self.md = md
        f = curve.field
        i, m, l = md.degrees
        self.sizes = (i + 1, m + 1, l + 1)
        self.offsets = (0, i + 1, i + m + 2)
        self.raw_dim = i + m + l + 3
        # gluing equations on the raw coordinates
        glue_a = [f.zero] * self.raw_dim
        glue_a[self.offsets[0]] = f.one
        glue_a[self.offsets[1]] = glue_a[self.offsets[1]] - f.one
        glue_b = [f.zero] * self.raw_dim
        glue_b[self.offsets[1] + m] = glue_b[self.offsets[1] + m] + f.one
        glue_b[self.offsets[2]] = -f.one
        self.constraints = Matrix((tuple(glue_a), tuple(glue_b)), self.raw_dim, f)
        self.free, vecs = kernel_vectors(self.constraints)
        if len(self.free) != curve.n:
            raise CurveError("glued space of %r has dimension %d" % (md, len(self.free)))
        # chart vector k has a 1 at raw coordinate free[k] and 0 at the other free ones
        self.chart = Matrix.from_columns(vecs, self.raw_dim, f)

    @property
    def dim(self) -> int:
        return self.curve.n

    def __repr__(self):
        return "SectionSpace(d=%d, %r)" % (self.curve.d, self.md)

    def to_raw(self, coords: Sequence) -> tuple:
        return self.chart.apply(coords)

    def from_raw(self, raw: Sequence) -> tuple:
        raw = tuple(self.curve.field(x) for x in raw)
        if any(x != 0 for x in self.constraints.apply(raw)):
            raise CurveError("raw triple violates the node gluing for %r" % (self.md,))
        return tuple(raw[c] for c in self.free)

    def parts(self, coords: Sequence) -> tuple[tuple, tuple, tuple]:
        """(s1, s2, s3) coefficient tuples of the section with these coordinates."""
        raw = self.to_raw(coords)
        return tuple(tuple(raw[o:o + s]) for o, s in zip(self.offsets, self.sizes))

    def from_parts(self, s1: Sequence, s2: Sequence, s3: Sequence) -> tuple:
        f = self.curve.field
        raw = _poly(s1, self.sizes[0], f) + _poly(s2, self.sizes[1], f) + _poly(s3, self.sizes[2], f)
        return self.from_raw(raw)

    def part_selector(self, components: Iterable[int]) -> Matrix:
        """Matrix sending chart coordinates to the raw coefficients of the chosen parts."""
        rows = []
        for q in sorted(set(components)):
            if q not in COMPONENTS:
                raise CurveError("component must be 1, 2 or 3, got %r" % (q,))
            o, s = self.offsets[q - 1], self.sizes[q - 1]
            rows.extend(self.chart.rows[o:o + s])
        return Matrix(tuple(rows), self.dim, self.curve.field)

    def full(self) -> Subspace:
        return Subspace.full(self.dim, self.curve.field)


@lru_cache(maxsize=None)
def ambient(curve: ChainCurve, md: Multidegree) -> SectionSpace:
    """The section space H^0(X, L_md) with its canonical chart."""
    return SectionSpace(curve, md)


def component_space(curve: ChainCurve) -> Subspace:
    """All polynomials of degree <= d on one component."""
    return Subspace.full(curve.n, curve.field)


def _shift(coeffs: Sequence, k: int, length: int, field) -> tuple:
    out = [field.zero] * length
    for idx, c in enumerate(coeffs):
        if c != 0:
            out[idx + k] = c
    return tuple(out)


@lru_cache(maxsize=None)
def alpha(curve: ChainCurve, md: Multidegree, q: int) -> Matrix:
    """Restriction H^0(L_md) -> H^0(L_{X_q}) in the component chart of X_q.

    The X_q part is multiplied by the node forms that put it into the
    twisted subspace: t^(d-i) on X1, u^i on X2 (degree then <= d-l), and
    v^(d-l) on X3.
    """
    if q not in COMPONENTS:
        raise CurveError("component must be 1, 2 or 3, got %r" % (q,))
    space = ambient(curve, md)
    f = curve.field
    shift = {1: curve.d - md.i, 2: md.i, 3: curve.d - md.l}[q]
    cols = []
    for k in range(space.dim):
        e = [f.zero] * space.dim
        e[k] = f.one
        part = space.parts(e)[q - 1]
        cols.append(_shift(part, shift, curve.n, f))
    return Matrix.from_columns(cols, curve.n, f)


def _orders_window(component: int, ord_a: int, ord_b: int) -> tuple[int, int]:
    """(order at zero, order at infinity) for a component's node orders."""
    if component == 1:
        if ord_b:
            raise CurveError("X1 does not contain B")
        return ord_a, 0
    if component == 2:
        return ord_a, ord_b
    if component == 3:
        if ord_a:
            raise CurveError("X3 does not contain A")
        return ord_b, 0
    raise CurveError("component must be 1, 2 or 3, got %r" % (component,))


def twist_poly(v: Subspace, at_zero: int, at_infinity: int) -> Subspace:
    """Polynomials of ``v`` vanishing to order >= at_zero at 0 and >= at_infinity at infinity.

    The ambient is polynomials of degree <= n with n = ambient_dim - 1, and
    the order at infinity of p is n - deg p.
    """
    if at_zero < 0 or at_infinity < 0:
        raise CurveError("vanishing orders must be nonnegative")
    n = v.ambient_dim - 1
    lo, hi = at_zero, n - at_infinity
    if lo == 0 and hi == n:
        return v
    if lo > hi or not v.basis:
        return Subspace.zero(v.ambient_dim, v.field)
    excluded = [k for k in range(v.ambient_dim) if k < lo or k > hi]
    # coefficient vectors c with sum_r c_r * basis_r vanishing on the excluded slots
    conds = Matrix(tuple(tuple(row[k] for row in v.basis) for k in excluded), v.dim, v.field)
    combos = nullspace(conds)
    f = v.field
    vecs = []
    for c in combos.basis:
        vec = [f.zero] * v.ambient_dim
        for coef, row in zip(c, v.basis):
            if coef != 0:
                vec = [a + coef * b for a, b in zip(vec, row)]
        vecs.append(vec)
    return Subspace.span(vecs, v.ambient_dim, f)


def twist(v: Subspace, ord_a: int = 0, ord_b: int = 0, component: int = 2) -> Subspace:
    """V(-ord_a A - ord_b B) for a subspace of X_component's polynomial space."""
    z, inf = _orders_window(component, ord_a, ord_b)
    return twist_poly(v, z, inf)


def orders_at_zero(v: Subspace) -> tuple[int, ...]:
    return v.pivots


def orders_at_infinity(v: Subspace) -> tuple[int, ...]:
    rev = Subspace.span((row[::-1] for row in v.basis), v.ambient_dim, v.field)
    return rev.pivots


def vanishing_sequence(v: Subspace, point: str = "A", component: int = 2) -> tuple[int, ...]:
    """Increasing vanishing orders of ``v`` at node ``point`` of X_component."""
    if v.dim == 0:
        raise CurveError("vanishing sequence of the zero space is undefined")
    if point not in ("A", "B"):
        raise CurveError("point must be 'A' or 'B'")
    if (component, point) in ((1, "A"), (3, "B"), (2, "A")):
        return orders_at_zero(v)
    if (component, point) == (2, "B"):
        return orders_at_infinity(v)
    raise CurveError("X%d does not contain %s" % (component, point))


def is_order(v: Subspace, o: int, point: str = "A", component: int = 2) -> bool:
    """True when ``o`` is a vanishing order of ``v`` at the point (False for v = 0)."""
    if v.dim == 0:
        return False
    return o in vanishing_sequence(v, point, component)


@lru_cache(maxsize=None)
def _vanishing_subspace(curve: ChainCurve, md: Multidegree, components: frozenset) -> Subspace:
    space = ambient(curve, md)
    return nullspace(space.part_selector(components))


def vanishing_subspace(space: SectionSpace, components: Iterable[int]) -> Subspace:
    """Sections of ``space`` identically zero on every X_q with q in ``components``."""
    comps = frozenset(components)
    if not comps or not comps <= set(COMPONENTS):
        raise CurveError("subcurve must be a nonempty set of components, got %r" % (sorted(comps),))
    return _vanishing_subspace(space.curve, space.md, comps)


def complement(components: Iterable[int]) -> frozenset:
    """The complementary subcurve X_q^c as a component set."""
    return frozenset(COMPONENTS) - frozenset(components)


def vanishing_part(v: Subspace, space: SectionSpace, components: Iterable[int]) -> Subspace:
    """V^{Y,0}: the sections of ``v`` vanishing on the subcurve Y."""
    comps = frozenset(components)
    if not comps or not comps <= set(COMPONENTS):
        raise CurveError("subcurve must be a nonempty set of components, got %r" % (sorted(comps),))
    if not v.basis:
        return v
    sel = _selector(space.curve, space.md, comps)
    _, coeffs = kernel_vectors(sel @ Matrix.from_columns(v.basis, v.ambient_dim, v.field))
    return Subspace.span((combine(v.basis, c, v.field) for c in coeffs), v.ambient_dim, v.field)


@lru_cache(maxsize=None)
def _selector(curve: ChainCurve, md: Multidegree, components: frozenset) -> Matrix:
    return ambient(curve, md).part_selector(components)
