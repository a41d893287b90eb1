"""Refined input series h and the kernel spaces K_il, with the predicates they satisfy.

K_il is the space of sections of multidegree (i, d-i-l, l) whose restriction
to X1 lies in V1(-(d-i)A), to X2 in V2(-iA-lB) and to X3 in V3(-(d-l)B).
Each ``check_*`` function below runs one family of statements about these
spaces over the whole grid and records every instance in a :class:`Report`.
"""

from __future__ import annotations

from functools import cached_property
from itertools import permutations

from .curve import (
    ChainCurve,
    CurveError,
    alpha,
    ambient,
    complement,
    is_order,
    twist,
    vanishing_part,
    vanishing_sequence,
)
from .linalg import Matrix, Subspace, map_image, map_preimage
from .report import Report
from .transfer import edges, transfer


class SeriesError(ValueError):
    pass


class RefinedSeries:
    """h = (V1, V2, V3): (r+1)-dimensional subspaces of degree-d polynomials.

    V1 lives on X1 (node A at t=0), V3 on X3 (node B at v=0), V2 on X2 (A at
    0, B at infinity).  The vanishing sequences are cached:
    a = V1 at A, b = V2 at A, bp = V2 at B, c = V3 at B.
    """

    def __init__(self, curve: ChainCurve, V1: Subspace, V2: Subspace, V3: Subspace):
        self.curve = curve
        for name, v in (("V_X1", V1), ("V_X2", V2), ("V_X3", V3)):
            if v.ambient_dim != curve.n:
                raise SeriesError("%s has ambient %d, expected %d" % (name, v.ambient_dim, curve.n))
            if v.field != curve.field:
                raise SeriesError("%s is over %s, expected %s" % (name, v.field, curve.field))
        dims = {V1.dim, V2.dim, V3.dim}
        if len(dims) != 1 or 0 in dims:
            raise SeriesError("component series must share a positive dimension, got %d, %d, %d"
                              % (V1.dim, V2.dim, V3.dim))
        self.V1, self.V2, self.V3 = V1, V2, V3
        self.r = V2.dim - 1

    @property
    def d(self) -> int:
        return self.curve.d

    @property
    def field(self):
        return self.curve.field

    def component(self, q: int) -> Subspace:
        return (self.V1, self.V2, self.V3)[q - 1]

    @cached_property
    def a(self) -> tuple[int, ...]:
        return vanishing_sequence(self.V1, "A", 1)

    @cached_property
    def b(self) -> tuple[int, ...]:
        return vanishing_sequence(self.V2, "A", 2)

    @cached_property
    def bp(self) -> tuple[int, ...]:
        return vanishing_sequence(self.V2, "B", 2)

    @cached_property
    def c(self) -> tuple[int, ...]:
        return vanishing_sequence(self.V3, "B", 3)

    def is_refined(self) -> bool:
        r, d = self.r, self.d
        return all(self.a[j] + self.b[r - j] == d for j in range(r + 1)) and all(
            self.bp[k] + self.c[r - k] == d for k in range(r + 1))

    def twisted_pieces(self, i: int, l: int) -> tuple[Subspace, Subspace, Subspace]:
        """V1(-(d-i)A), V2(-iA-lB), V3(-(d-l)B)."""
        d = self.d
        return (twist(self.V1, d - i, 0, 1), twist(self.V2, i, l, 2), twist(self.V3, 0, d - l, 3))

    def __repr__(self):
        return "RefinedSeries(d=%d, r=%d, b=%s, b'=%s)" % (self.d, self.r, self.b, self.bp)


def interval_index(seq: tuple[int, ...], x: int) -> int | None:
    """The j with seq[j-1] < x <= seq[j], using seq[-1] = -1; None past the end."""
    prev = -1
    for j, s in enumerate(seq):
        if prev < x <= s:
            return j
        prev = s
    return None


def kernel_K(h: RefinedSeries, i: int, l: int) -> Subspace:
    """K_il as the intersection of the three alpha-preimages of the twisted series."""
    curve = h.curve
    md = curve.md(i, l)
    out = None
    for q, piece in zip((1, 2, 3), h.twisted_pieces(i, l)):
        pre = map_preimage(alpha(curve, md, q), piece)
        out = pre if out is None else out & pre
    return out


def _drops(v: Subspace, smaller: Subspace) -> bool:
    return v.dim != smaller.dim


def ev_rank_predicted(h: RefinedSeries, i: int, l: int) -> int:
    """Rank of the node evaluation map read off from the four twist-drop tests."""
    d = h.d
    p1, p2, p3 = h.twisted_pieces(i, l)
    at_a = _drops(p1, twist(h.V1, d - i + 1, 0, 1)) or _drops(p2, twist(h.V2, i + 1, l, 2))
    at_b = _drops(p3, twist(h.V3, 0, d - l + 1, 3)) or _drops(p2, twist(h.V2, i, l + 1, 2))
    return int(at_a) + int(at_b)


def ev_rank_direct(h: RefinedSeries, i: int, l: int) -> int:
    """Rank of the node evaluation map on the direct sum of the twisted series.

    The A-row compares the t^(d-i) coefficient of the X1 piece with the u^i
    coefficient of the X2 piece; the B-row compares the u^(d-l) coefficient
    of the X2 piece with the v^(d-l) coefficient of the X3 piece.
    """
    d = h.d
    f = h.field
    cols = []
    for q, piece in zip((1, 2, 3), h.twisted_pieces(i, l)):
        for row in piece.basis:
            at_a = f.zero
            at_b = f.zero
            if q == 1:
                at_a = row[d - i]
            elif q == 2:
                at_a = -row[i]
                at_b = row[d - l]
            else:
                at_b = -row[d - l]
            cols.append((at_a, at_b))
    if not cols:
        return 0
    return Matrix.from_columns(cols, 2, f).rank()


def kernel_dim_predicted(h: RefinedSeries, i: int, l: int) -> int:
    """dim V1(-(d-i)A) + dim V2(-iA-lB) + dim V3(-(d-l)B) - rank(ev)."""
    if i < 0 or l < 0 or i + l > h.d:
        raise CurveError("(%d, %d) is outside the grid" % (i, l))
    return sum(p.dim for p in h.twisted_pieces(i, l)) - ev_rank_predicted(h, i, l)


class KernelGrid:
    """K_il at every grid point, with the vanishing subspaces on demand."""

    def __init__(self, h: RefinedSeries):
        self.h = h
        self.curve = h.curve
        self.K = {(i, l): kernel_K(h, i, l) for i, l in self.curve.points()}
        self._vanish = {}

    def __getitem__(self, key) -> Subspace:
        return self.K[key]

    def dim(self, i: int, l: int) -> int:
        return self.K[(i, l)].dim

    def dims(self) -> dict[tuple[int, int], int]:
        return {key: k.dim for key, k in self.K.items()}

    def vanish(self, i: int, l: int, components) -> Subspace:
        """K_il^{Y,0} for the subcurve Y given as a set of components."""
        key = (i, l, frozenset(components))
        if key not in self._vanish:
            space = ambient(self.curve, self.curve.md(i, l))
            self._vanish[key] = vanishing_part(self.K[(i, l)], space, components)
        return self._vanish[key]

    def image(self, src: tuple[int, int], tgt: tuple[int, int]) -> Subspace:
        """phi_{src,tgt}(K_src)."""
        m = transfer(self.curve, self.curve.md(*src), self.curve.md(*tgt))
        return map_image(m.matrix, self.K[src])


def check_dimensions(grid: KernelGrid, report: Report | None = None) -> Report:
    """dim K_il >= r+1, with equality when i <= b_0 or l <= b'_0; direct dim = prediction."""
    report = report if report is not None else Report()
    h = grid.h
    r = h.r
    for (i, l), k in grid.K.items():
        report.add("dim_lower_bound", (i, l), k.dim >= r + 1, dim=k.dim, r=r)
        if i <= h.b[0] or l <= h.bp[0]:
            report.add("dim_boundary", (i, l), k.dim == r + 1, dim=k.dim, r=r)
        predicted = kernel_dim_predicted(h, i, l)
        report.add("dim_predicted", (i, l), k.dim == predicted, dim=k.dim, predicted=predicted)
        direct_rank = ev_rank_direct(h, i, l)
        report.add("ev_rank", (i, l), direct_rank == ev_rank_predicted(h, i, l),
                   direct=direct_rank, predicted=ev_rank_predicted(h, i, l))
    return report


def check_prop_linking(grid: KernelGrid, report: Report | None = None) -> Report:
    """phi maps K into K along every edge, in both directions."""
    report = report if report is not None else Report()
    for md, q, other in edges(grid.curve):
        a, b = md.key, other.key
        report.add("linking", a, grid.image(a, b) <= grid[b], q=q, direction="down", target=list(b))
        report.add("linking", a, grid.image(b, a) <= grid[a], q=q, direction="up", target=list(b))
    return report


def check_prop_forward_exact(grid: KernelGrid, report: Report | None = None) -> Report:
    """The three image identities of K under the maps lowering i, l or both."""
    report = report if report is not None else Report()
    for i, l in grid.curve.points():
        if i >= 1 and l >= 1:
            img = grid.image((i, l), (i - 1, l - 1))
            want = grid.vanish(i - 1, l - 1, complement({2}))
            report.add("forward_exact_diag", (i, l), img == want, image_dim=img.dim, expected_dim=want.dim)
        if i >= 1:
            img = grid.image((i, l), (i - 1, l))
            want = grid.vanish(i - 1, l, {1})
            report.add("forward_exact_i", (i, l), img == want, image_dim=img.dim, expected_dim=want.dim)
        if l >= 1:
            img = grid.image((i, l), (i, l - 1))
            want = grid.vanish(i, l - 1, {3})
            report.add("forward_exact_l", (i, l), img == want, image_dim=img.dim, expected_dim=want.dim)
    return report


def check_prop_reverse(grid: KernelGrid, report: Report | None = None) -> Report:
    """When the maps raising i or l fail to hit the full vanishing part, by vanishing orders."""
    report = report if report is not None else Report()
    h = grid.h
    for i, l in grid.curve.points():
        if i >= 1:
            img = grid.image((i - 1, l), (i, l))
            strict = img != grid.vanish(i, l, complement({1}))
            cond = (i - 1) in h.b and not is_order(twist(h.V2, 0, l), i - 1, "A")
            report.add("reverse_i", (i, l), strict == cond, image_strict=strict, order_condition=cond)
        if l >= 1:
            img = grid.image((i, l - 1), (i, l))
            strict = img != grid.vanish(i, l, complement({3}))
            cond = (l - 1) in h.bp and not is_order(twist(h.V2, i, 0), l - 1, "B")
            report.add("reverse_l", (i, l), strict == cond, image_strict=strict, order_condition=cond)
    return report


def distributes(v1: Subspace, v2: Subspace, v3: Subspace) -> bool:
    """v1 & (v2 + v3) == v1 & v2 + v1 & v3."""
    return (v1 & (v2 + v3)) == ((v1 & v2) + (v1 & v3))


def check_distributivity(grid: KernelGrid, report: Report | None = None) -> Report:
    """K^{q1} & (K^{q2} + K^{q3}) = K^{Xq3^c} + K^{Xq2^c} for all orderings, and symmetry."""
    report = report if report is not None else Report()
    for i, l in grid.curve.points():
        van = {q: grid.vanish(i, l, {q}) for q in (1, 2, 3)}
        for q1, q2, q3 in permutations((1, 2, 3)):
            lhs = van[q1] & (van[q2] + van[q3])
            rhs = grid.vanish(i, l, complement({q3})) + grid.vanish(i, l, complement({q2}))
            report.add("distributivity", (i, l), lhs == rhs, order=[q1, q2, q3])
        verdicts = [distributes(van[q1], van[q2], van[q3]) for q1, q2, q3 in ((1, 2, 3), (2, 1, 3), (3, 1, 2))]
        report.add("distributivity_symmetry", (i, l), len(set(verdicts)) == 1, verdicts=verdicts)
    return report


def check_dim_inequalities(grid: KernelGrid, report: Report | None = None) -> Report:
    """dim(K^{q1} + K^{q2}) >= dim K - 1 and sum of the three >= 2(dim K - 1)."""
    report = report if report is not None else Report()
    for i, l in grid.curve.points():
        n = grid.dim(i, l)
        van = {q: grid.vanish(i, l, {q}) for q in (1, 2, 3)}
        for q1, q2 in ((1, 2), (1, 3), (2, 3)):
            s = (van[q1] + van[q2]).dim
            report.add("pair_sum_bound", (i, l), s >= n - 1, pair=[q1, q2], sum_dim=s, dim=n)
        total = sum(v.dim for v in van.values())
        report.add("triple_sum_bound", (i, l), total >= 2 * (n - 1), total=total, dim=n)
    return report


def check_properness(grid: KernelGrid, report: Report | None = None) -> Report:
    """Equality in the triple-sum bound iff i, l are the stated vanishing orders; then all proper."""
    report = report if report is not None else Report()
    h = grid.h
    for i, l in grid.curve.points():
        n = grid.dim(i, l)
        van = [grid.vanish(i, l, {q}) for q in (1, 2, 3)]
        equality = sum(v.dim for v in van) == 2 * (n - 1)
        cond = is_order(twist(h.V2, 0, l), i, "A") and is_order(twist(h.V2, i, 0), l, "B")
        report.add("sum_equality_iff", (i, l), equality == cond, equality=equality, order_condition=cond)
        if cond:
            report.add("sum_equality_proper", (i, l), all(v.dim < n for v in van), dims=[v.dim for v in van], dim=n)
    return report


def check_monotonicity(grid: KernelGrid, report: Report | None = None) -> Report:
    """dim K never drops when i or l increases; equal dims when the raising map hits everything."""
    report = report if report is not None else Report()
    for i, l in grid.curve.points():
        n = grid.dim(i, l)
        if i >= 1:
            report.add("monotone_i", (i, l), n >= grid.dim(i - 1, l), dim=n, prev=grid.dim(i - 1, l))
            if grid.image((i - 1, l), (i, l)) == grid.vanish(i, l, complement({1})):
                report.add("equal_dim_i", (i, l), n == grid.dim(i - 1, l), dim=n, prev=grid.dim(i - 1, l))
        if l >= 1:
            report.add("monotone_l", (i, l), n >= grid.dim(i, l - 1), dim=n, prev=grid.dim(i, l - 1))
            if grid.image((i, l - 1), (i, l)) == grid.vanish(i, l, complement({3})):
                report.add("equal_dim_l", (i, l), n == grid.dim(i, l - 1), dim=n, prev=grid.dim(i, l - 1))
    return report


CHECKS = (
    check_dimensions,
    check_prop_linking,
    check_prop_forward_exact,
    check_prop_reverse,
    check_distributivity,
    check_dim_inequalities,
    check_properness,
    check_monotonicity,
)


def check_all(grid: KernelGrid) -> Report:
    report = Report()
    for check in CHECKS:
        check(grid, report)
    return report
