import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from llseries.field import QQ, FieldError, Mod, PrimeField, field_from_json, parse_field
from llseries.linalg import (
    Matrix,
    NotInImageError,
    ShapeError,
    Subspace,
    complement_basis,
    iter_subspaces,
    kernel_vectors,
    lift,
    map_image,
    map_kernel,
    map_preimage,
    nullspace,
    rref,
    solve,
)

F3 = PrimeField(3)
F5 = PrimeField(5)


# ---- fields

def test_rational_canonical_form():
    assert QQ("-6/4") == Fraction(-3, 2)
    assert QQ.format(Fraction(-3, 2)) == "-3/2"
    assert QQ.format(Fraction(4, 2)) == "2"
    assert QQ.parse(" 7/14 ") == Fraction(1, 2)


def test_prime_field_arithmetic():
    a, b = F5(3), F5(4)
    assert a + b == 2 and a * b == 2 and a - b == 4
    assert (a / b) * b == a
    assert F5(Fraction(1, 2)) == 3
    assert str(F5(-1)) == "4"
    with pytest.raises(ZeroDivisionError):
        a / F5(0)
    with pytest.raises(FieldError):
        F5(Fraction(1, 5))
    with pytest.raises(FieldError):
        Mod(1, 5) + Mod(1, 3)


def test_field_parsing():
    assert parse_field("rational") == QQ
    assert parse_field("prime:7") == PrimeField(7)
    assert field_from_json({"prime": 5}) == F5
    assert field_from_json("rational") == QQ
    with pytest.raises(FieldError):
        PrimeField(9)
    with pytest.raises(FieldError):
        parse_field("reals")


# ---- fixed examples

def test_rref_lowest_pivots():
    m = Matrix.from_rows([[0, 2, 4], [1, 1, 1], [1, 2, 3]], field=QQ)
    assert rref(m).rows == ((1, 0, -1), (0, 1, 2))


def test_intersection_of_planes():
    u = Subspace.span([[1, 0, 0], [0, 1, 0]], 3)
    v = Subspace.span([[0, 1, 0], [0, 0, 1]], 3)
    assert (u & v) == Subspace.span([[0, 1, 0]], 3)
    assert (u + v) == Subspace.full(3)


def test_kernel_vectors_identity_on_free_columns():
    m = Matrix.from_rows([[1, 2, 0, 1], [0, 0, 1, 3]])
    free, vecs = kernel_vectors(m)
    assert free == (1, 3)
    for k, v in enumerate(vecs):
        assert [v[f] for f in free] == [1 if j == k else 0 for j in range(len(free))]
        assert all(x == 0 for x in m.apply(v))


def test_preimage_of_zero_is_kernel():
    m = Matrix.from_rows([[1, 1, 0], [0, 0, 0]])
    assert map_preimage(m, Subspace.zero(2)) == map_kernel(m)


def test_solve_and_lift():
    m = Matrix.from_rows([[1, 1, 0], [0, 1, 1]])
    x = solve(m, (2, 3))
    assert m.apply(x) == (2, 3)
    with pytest.raises(NotInImageError):
        solve(Matrix.from_rows([[1, 1], [1, 1]]), (1, 0))
    assert lift(m, (2, 3)) == x


def test_complement_basis():
    inner = Subspace.span([[1, 1, 0]], 3)
    outer = Subspace.span([[1, 0, 0], [0, 1, 0]], 3)
    comp = complement_basis(inner, outer)
    assert len(comp) == 1
    assert Subspace.span(list(inner.basis) + comp, 3) == outer


def test_shape_errors():
    with pytest.raises(ShapeError):
        Subspace.span([[1, 2]], 3)
    with pytest.raises(ShapeError):
        Subspace.zero(2) + Subspace.zero(3)
    with pytest.raises(ShapeError):
        Matrix.from_rows([[1, 2]]) @ Matrix.from_rows([[1, 2]])


# ---- exhaustive oracle over F_3

def _all_vectors(n, field):
    return [tuple(field(x) for x in v) for v in itertools.product(range(field.p), repeat=n)]


def _points(s: Subspace):
    return {v for v in _all_vectors(s.ambient_dim, s.field) if s.contains(v)}


def test_iter_subspaces_counts():
    # Gaussian binomials over F_3: [4 choose 1] = 40, [4 choose 2] = 130
    full = Subspace.full(4, F3)
    assert sum(1 for _ in iter_subspaces(full, 1)) == 40
    assert sum(1 for _ in iter_subspaces(full, 2)) == 130
    # inside a 3-dim subspace of F_5^4: [3 choose 2]_5 = 31
    w = Subspace.span([[1, 0, 0, 1], [0, 1, 0, 2], [0, 0, 1, 3]], 4, F5)
    subs = list(iter_subspaces(w, 2))
    assert len(subs) == 31 == len(set(subs))
    assert all(s <= w and s.dim == 2 for s in subs)


def test_f3_every_pair_of_planes_in_f3_cubed():
    planes = list(iter_subspaces(Subspace.full(3, F3), 2))
    for u in planes:
        for v in planes:
            assert _points(u & v) == _points(u) & _points(v)
            assert (u + v).dim == u.dim + v.dim - (u & v).dim


def f3_entry():
    return st.integers(min_value=0, max_value=2)


@st.composite
def f3_matrices(draw, max_dim=4):
    rows = draw(st.integers(1, max_dim))
    cols = draw(st.integers(1, max_dim))
    data = draw(st.lists(st.lists(f3_entry(), min_size=cols, max_size=cols), min_size=rows, max_size=rows))
    return Matrix.from_rows(data, cols, F3)


@st.composite
def f3_subspaces(draw, n):
    k = draw(st.integers(0, n))
    data = draw(st.lists(st.lists(f3_entry(), min_size=n, max_size=n), min_size=k, max_size=k))
    return Subspace.span(data, n, F3)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_f3_preimage_image_kernel_match_enumeration(data):
    m = data.draw(f3_matrices())
    w = data.draw(f3_subspaces(m.nrows))
    u = data.draw(f3_subspaces(m.ncols))
    src = _all_vectors(m.ncols, F3)
    assert _points(map_kernel(m)) == {v for v in src if all(x == 0 for x in m.apply(v))}
    assert _points(map_preimage(m, w)) == {v for v in src if w.contains(m.apply(v))}
    assert _points(map_image(m, u)) == {m.apply(v) for v in _points(u)}


# ---- algebraic properties over Q

small = st.integers(min_value=-3, max_value=3)


@st.composite
def q_subspaces(draw, n=5):
    k = draw(st.integers(0, n))
    data = draw(st.lists(st.lists(small, min_size=n, max_size=n), min_size=k, max_size=k))
    return Subspace.span(data, n, QQ)


@settings(max_examples=120, deadline=None)
@given(q_subspaces(), q_subspaces())
def test_dimension_formula(u, v):
    assert (u + v).dim + (u & v).dim == u.dim + v.dim
    assert (u & v) <= u and (u & v) <= v
    assert u <= (u + v) and v <= (u + v)


@settings(max_examples=120, deadline=None)
@given(st.data())
def test_image_preimage_adjunction(data):
    rows, cols = data.draw(st.integers(1, 4)), data.draw(st.integers(1, 4))
    entries = data.draw(st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows))
    m = Matrix.from_rows(entries, cols)
    u = data.draw(q_subspaces(cols))
    w = data.draw(q_subspaces(rows))
    assert (map_image(m, u) <= w) == (u <= map_preimage(m, w))
    assert map_kernel(m) <= map_preimage(m, w)
    assert map_kernel(m).dim + m.rank() == cols


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5))
def test_rref_idempotent_and_span_canonical(rows):
    m = Matrix.from_rows(rows, 4)
    once = rref(m)
    assert rref(once) == once
    s = Subspace.span(rows, 4)
    assert Subspace.span(s.basis, 4) == s
    assert Subspace.span(list(reversed(rows)), 4) == s
    assert nullspace(m) == s.annihilator()


@settings(max_examples=80, deadline=None)
@given(q_subspaces(), q_subspaces())
def test_complement_completes(u, v):
    inner, outer = u & v, v
    comp = complement_basis(inner, outer)
    assert len(comp) == outer.dim - inner.dim
    assert Subspace.span(list(inner.basis) + comp, outer.ambient_dim) == outer


def test_rref_rank_one():
    assert rref(Matrix.from_rows([[2, 4], [1, 2]])).rows == ((1, 2),)
