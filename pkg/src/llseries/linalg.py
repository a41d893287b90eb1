"""Exact matrices and subspaces in canonical reduced row-echelon form.

Everything here is field-generic: entries are elements of a field from
:mod:`llseries.field`.  Vectors are tuples.  A :class:`Subspace` stores the
unique RREF basis of its row space, so two subspaces are equal exactly when
their dataclass fields are equal.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .field import QQ


class LinalgError(ValueError):
    pass


class ShapeError(LinalgError):
    pass


class NotInImageError(LinalgError):
    pass


# Both Fraction and Mod are falsy exactly at zero.
_is_zero = operator.not_


def _rref_rows(rows: Sequence[Sequence], ncols: int, field):
    """Row-reduce; return (nonzero RREF rows as tuples, pivot columns).

    Pivots are chosen at the lowest column index available, which is what
    makes every derived choice (complements, lifts) reproducible.
    """
    work = [[field(x) for x in row] for row in rows]
    for row in work:
        if len(row) != ncols:
            raise ShapeError("ragged row: expected %d entries, got %d" % (ncols, len(row)))
    pivots = []
    top = 0
    nrows = len(work)
    for col in range(ncols):
        if top == nrows:
            break
        pr = None
        for r in range(top, nrows):
            if not _is_zero(work[r][col]):
                pr = r
                break
        if pr is None:
            continue
        work[top], work[pr] = work[pr], work[top]
        prow = work[top]
        inv = field.one / prow[col]
        if not inv == 1:
            prow = [x * inv for x in prow]
            work[top] = prow
        for r in range(nrows):
            if r == top:
                continue
            f = work[r][col]
            if _is_zero(f):
                continue
            row = work[r]
            work[r] = [a - f * b if not _is_zero(b) else a for a, b in zip(row, prow)]
        pivots.append(col)
        top += 1
    return tuple(tuple(row) for row in work[:top]), tuple(pivots)


@dataclass(frozen=True)
class Matrix:
    """A dense matrix over an exact field, stored row-major as tuples."""

    rows: tuple
    ncols: int
    field: object = QQ

    def __post_init__(self):
        for row in self.rows:
            if len(row) != self.ncols:
                raise ShapeError("row of length %d in a %d-column matrix" % (len(row), self.ncols))

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], ncols: int | None = None, field=QQ) -> "Matrix":
        rows = tuple(tuple(field(x) for x in row) for row in rows)
        if ncols is None:
            if not rows:
                raise ShapeError("ncols is required for an empty matrix")
            ncols = len(rows[0])
        return cls(rows, ncols, field)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int, field=QQ) -> "Matrix":
        rows = tuple(tuple(col[r] for col in columns) for r in range(nrows))
        return cls(rows, len(columns), field)

    @classmethod
    def identity(cls, n: int, field=QQ) -> "Matrix":
        one, zero = field.one, field.zero
        return cls(tuple(tuple(one if r == c else zero for c in range(n)) for r in range(n)), n, field)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field=QQ) -> "Matrix":
        zero = field.zero
        return cls(tuple((zero,) * ncols for _ in range(nrows)), ncols, field)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def T(self) -> "Matrix":
        return Matrix(tuple(self.column(c) for c in range(self.ncols)), self.nrows, self.field)

    def column(self, c: int) -> tuple:
        return tuple(row[c] for row in self.rows)

    @cached_property
    def _sparse(self) -> tuple:
        return tuple(tuple((c, a) for c, a in enumerate(row) if a) for row in self.rows)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise ShapeError("vector of length %d applied to %dx%d matrix" % (len(v), *self.shape))
        zero = self.field.zero
        out = []
        for row in self._sparse:
            acc = zero
            for c, a in row:
                b = v[c]
                if b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ShapeError("cannot multiply %dx%d by %dx%d" % (*self.shape, *other.shape))
        cols = [other.column(c) for c in range(other.ncols)]
        out = tuple(zip(*(self.apply(col) for col in cols))) if cols else tuple(() for _ in self.rows)
        return Matrix(out, other.ncols, self.field)

    def is_zero(self) -> bool:
        return all(_is_zero(x) for row in self.rows for x in row)

    def rank(self) -> int:
        return len(_rref_rows(self.rows, self.ncols, self.field)[1])


def rref(m: Matrix) -> Matrix:
    """Canonical reduced row-echelon form with zero rows removed."""
    rows, _ = _rref_rows(m.rows, m.ncols, m.field)
    return Matrix(rows, m.ncols, m.field)


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``field ** ambient_dim`` held by its canonical basis.

    Build instances with :meth:`span`, :meth:`zero` or :meth:`full`; the
    raw constructor trusts that ``basis`` is already in RREF.
    """

    ambient_dim: int
    basis: tuple
    pivots: tuple
    field: object = QQ

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int, field=QQ) -> "Subspace":
        vectors = list(vectors)
        rows, pivots = _rref_rows(vectors, ambient_dim, field)
        return cls(ambient_dim, rows, pivots, field)

    @classmethod
    def zero(cls, ambient_dim: int, field=QQ) -> "Subspace":
        return cls(ambient_dim, (), (), field)

    @classmethod
    def full(cls, ambient_dim: int, field=QQ) -> "Subspace":
        return cls.span(Matrix.identity(ambient_dim, field).rows, ambient_dim, field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ShapeError("ambient mismatch: %d vs %d" % (self.ambient_dim, other.ambient_dim))

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_intersect(self, other)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise ShapeError("vector of length %d vs ambient %d" % (len(v), self.ambient_dim))
        return _reduce(v, self) is None

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(row) for row in self.basis)

    def __lt__(self, other: "Subspace") -> bool:
        return self <= other and self.dim < other.dim

    def annihilator(self) -> "Subspace":
        """Linear forms (as row vectors) vanishing on this subspace."""
        return nullspace(Matrix(self.basis, self.ambient_dim, self.field))

    def as_matrix(self) -> Matrix:
        return Matrix(self.basis, self.ambient_dim, self.field)


def _reduce(v: Sequence, s: Subspace):
    """Reduce ``v`` against the RREF basis of ``s``; None when v lies in s."""
    w = [s.field(x) for x in v]
    for row, p in zip(s.basis, s.pivots):
        f = w[p]
        if not _is_zero(f):
            w = [a - f * b if not _is_zero(b) else a for a, b in zip(w, row)]
    if all(_is_zero(x) for x in w):
        return None
    return tuple(w)


def kernel_vectors(m: Matrix) -> tuple[tuple[int, ...], list[tuple]]:
    """Free columns of ``m`` and the matching kernel basis.

    The vector for free column f has a 1 in slot f and 0 in every other
    free slot.
    """
    rows, pivots = _rref_rows(m.rows, m.ncols, m.field)
    field = m.field
    pivset = set(pivots)
    free = tuple(c for c in range(m.ncols) if c not in pivset)
    vecs = []
    for f in free:
        v = [field.zero] * m.ncols
        v[f] = field.one
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        vecs.append(tuple(v))
    return free, vecs


def nullspace(m: Matrix) -> Subspace:
    """{x : m x = 0} as a subspace of field ** m.ncols."""
    _, vecs = kernel_vectors(m)
    return Subspace.span(vecs, m.ncols, m.field)


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    u._check(v)
    if not v.basis:
        return u
    if not u.basis:
        return v
    return Subspace.span(u.basis + v.basis, u.ambient_dim, u.field)


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    """Solve sum x_i u_i = sum y_j v_j and keep the common vectors."""
    u._check(v)
    if not u.basis or not v.basis:
        return Subspace.zero(u.ambient_dim, u.field)
    field = u.field
    cols = list(u.basis) + [tuple(-x for x in row) for row in v.basis]
    _, coeffs = kernel_vectors(Matrix.from_columns(cols, u.ambient_dim, field))
    return Subspace.span((combine(u.basis, c[: u.dim], field) for c in coeffs), u.ambient_dim, field)


def map_image(m: Matrix, w: Subspace) -> Subspace:
    if m.ncols != w.ambient_dim:
        raise ShapeError("map has %d columns, subspace lives in dim %d" % (m.ncols, w.ambient_dim))
    return Subspace.span((m.apply(row) for row in w.basis), m.nrows, m.field)


def map_kernel(m: Matrix) -> Subspace:
    return nullspace(m)


def map_preimage(m: Matrix, w: Subspace) -> Subspace:
    """{v : m v in w}."""
    if m.nrows != w.ambient_dim:
        raise ShapeError("map has %d rows, subspace lives in dim %d" % (m.nrows, w.ambient_dim))
    forms = w.annihilator().basis
    if not forms:
        return Subspace.full(m.ncols, m.field)
    composed = Matrix(forms, m.nrows, m.field) @ m
    return nullspace(composed)


def complement_basis(inner: Subspace, outer: Subspace) -> list[tuple]:
    """Vectors extending a basis of ``inner`` to one of ``outer``.

    Scans the canonical basis rows of ``outer`` in order and keeps each row
    that enlarges the running span.
    """
    if not inner <= outer:
        raise LinalgError("inner subspace is not contained in outer")
    picked = []
    running = inner
    for row in outer.basis:
        if running.dim == outer.dim:
            break
        if not running.contains(row):
            picked.append(row)
            running = Subspace.span(running.basis + (row,), outer.ambient_dim, outer.field)
    return picked


def solve(m: Matrix, target: Sequence) -> tuple:
    """Particular solution of ``m x = target`` with all free variables zero."""
    if len(target) != m.nrows:
        raise ShapeError("target of length %d for a %dx%d system" % (len(target), *m.shape))
    field = m.field
    aug = [tuple(row) + (field(t),) for row, t in zip(m.rows, target)]
    rows, pivots = _rref_rows(aug, m.ncols + 1, field)
    if pivots and pivots[-1] == m.ncols:
        raise NotInImageError("target is not in the image of the map")
    x = [field.zero] * m.ncols
    for row, p in zip(rows, pivots):
        x[p] = row[m.ncols]
    return tuple(x)


def lift(m: Matrix, target: Sequence, rng=None, sample=None) -> tuple:
    """Some ``v`` with ``m v == target``.

    Deterministic by default.  When ``rng`` is given, a random kernel
    element is added; ``sample(rng)`` must return a field scalar.
    """
    x = solve(m, target)
    if rng is None:
        return x
    ker = nullspace(m)
    if not ker.basis:
        return x
    coeffs = [sample(rng) for _ in ker.basis]
    return add_vectors(x, combine(ker.basis, coeffs, m.field))


def combine(vectors: Sequence[Sequence], coeffs: Sequence, field) -> tuple:
    """Linear combination sum(c * v)."""
    if not vectors:
        raise LinalgError("empty combination needs an explicit length")
    n = len(vectors[0])
    acc = [field.zero] * n
    for c, v in zip(coeffs, vectors):
        if _is_zero(c):
            continue
        for k, x in enumerate(v):
            if not _is_zero(x):
                acc[k] = acc[k] + c * x
    return tuple(acc)


def add_vectors(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def iter_subspaces(space: Subspace, k: int):
    """Every k-dimensional subspace of ``space``; prime fields only.

    Walks the reduced echelon forms of k x dim(space) coefficient matrices,
    so each subspace is produced exactly once.
    """
    from itertools import combinations, product

    field = space.field
    if not hasattr(field, "p"):
        raise LinalgError("subspace enumeration needs a finite field")
    m = space.dim
    if k < 0 or k > m:
        return
    if k == 0:
        yield Subspace.zero(space.ambient_dim, field)
        return
    values = [field(x) for x in range(field.p)]
    for pivots in combinations(range(m), k):
        # free slots: columns right of each row's pivot that are not pivots
        slots = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, m) if c not in pivots]
        for fill in product(values, repeat=len(slots)):
            coeffs = [[field.zero] * m for _ in range(k)]
            for r, p in enumerate(pivots):
                coeffs[r][p] = field.one
            for (r, c), x in zip(slots, fill):
                coeffs[r][c] = x
            vecs = [combine(space.basis, row, field) for row in coeffs]
            yield Subspace.span(vecs, space.ambient_dim, field)
