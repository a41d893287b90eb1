import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from llseries.curve import ChainCurve, alpha, ambient, twist
from llseries.field import PrimeField
from llseries.instances import SequenceSpec, adaptable_fixture, monomial_instance, random_refined, witness_fixture
from llseries.kernels import (
    KernelGrid,
    RefinedSeries,
    SeriesError,
    check_all,
    ev_rank_direct,
    ev_rank_predicted,
    interval_index,
    kernel_K,
    kernel_dim_predicted,
)
from llseries.linalg import Subspace

# dim K_il for the non-adaptable fixture; confirmed below by enumeration over F_5
WITNESS_DIMS = {
    (0, 0): 2, (0, 1): 2, (0, 2): 2, (0, 3): 2, (0, 4): 2,
    (1, 0): 2, (1, 1): 3, (1, 2): 3, (1, 3): 3,
    (2, 0): 2, (2, 1): 3, (2, 2): 3,
    (3, 0): 2, (3, 1): 3,
    (4, 0): 2,
}


def _brute_dims(h):
    """dim K_il by testing every section over a prime field against the definition."""
    p = h.field.p
    curve = h.curve
    out = {}
    for i, l in curve.points():
        md = curve.md(i, l)
        pieces = h.twisted_pieces(i, l)
        count = 0
        for coords in itertools.product(range(p), repeat=curve.n):
            v = tuple(h.field(x) for x in coords)
            if all(pieces[q - 1].contains(alpha(curve, md, q).apply(v)) for q in (1, 2, 3)):
                count += 1
        out[(i, l)] = round(math.log(count, p))
    return out


def test_witness_dims_match_enumeration():
    h = witness_fixture(PrimeField(5))
    assert _brute_dims(h) == WITNESS_DIMS
    assert KernelGrid(witness_fixture()).dims() == WITNESS_DIMS


def test_adaptable_dims_are_minimal():
    h = adaptable_fixture(PrimeField(5))
    assert set(_brute_dims(h).values()) == {2}
    assert set(KernelGrid(adaptable_fixture()).dims().values()) == {2}


def test_fixtures_pass_every_check():
    for h in (adaptable_fixture(), witness_fixture()):
        report = check_all(KernelGrid(h))
        assert report.ok, report.failures()[:3]
        names = set(report.summary())
        assert {"dim_predicted", "linking", "forward_exact_diag", "reverse_i", "reverse_l",
                "distributivity", "pair_sum_bound", "sum_equality_iff", "monotone_i"} <= names


def test_witness_prediction_at_one_one():
    h = witness_fixture()
    assert kernel_dim_predicted(h, 1, 1) == 3 >= h.r + 2
    assert kernel_K(h, 1, 1).dim == 3


def test_kernel_members_satisfy_definition():
    h = witness_fixture()
    curve = h.curve
    for i, l in curve.points():
        K = kernel_K(h, i, l)
        md = curve.md(i, l)
        for v in K.basis:
            for q, piece in zip((1, 2, 3), h.twisted_pieces(i, l)):
                assert piece.contains(alpha(curve, md, q).apply(v))


def test_ev_rank_agrees():
    for h in (adaptable_fixture(), witness_fixture(), monomial_instance(5, (1, 2, 4))):
        for i, l in h.curve.points():
            assert ev_rank_direct(h, i, l) == ev_rank_predicted(h, i, l)


def test_interval_index():
    b = (0, 2, 5)
    assert [interval_index(b, x) for x in range(7)] == [0, 1, 1, 2, 2, 2, None]
    assert interval_index((1, 3), 0) == 0


def test_refined_series_validation():
    c = ChainCurve(2)
    V = Subspace.full(3)
    with pytest.raises(SeriesError):
        RefinedSeries(c, V, Subspace.span([[1, 0, 0]], 3), V)
    with pytest.raises(SeriesError):
        RefinedSeries(c, Subspace.full(4), Subspace.full(4), Subspace.full(4))
    h = RefinedSeries(c, V, V, V)
    assert h.r == 2 and h.b == (0, 1, 2) and h.is_refined()


def test_twisted_pieces_for_monomials():
    h = monomial_instance(4, (0, 4))
    V1, V2, V3 = h.twisted_pieces(1, 1)
    assert V2.dim == 0
    assert V1 == twist(h.V1, 3, 0, 1) and V1.dim == 1
    assert V3.dim == 1


@st.composite
def small_instances(draw):
    d = draw(st.integers(1, 5))
    r = draw(st.integers(0, min(d, 2)))
    b = tuple(sorted(draw(st.lists(st.integers(0, d), min_size=r + 1, max_size=r + 1, unique=True))))
    bp = []
    for k in range(r + 1):
        lo = bp[-1] + 1 if bp else 0
        hi = d - b[r - k]
        bp.append(draw(st.integers(lo, hi)))
    spec = SequenceSpec(d, r, b, tuple(bp))
    pairing = draw(st.sampled_from(spec.pairings()))
    return random_refined(spec, draw(st.integers(0, 10 ** 6)), pairing=pairing)


@settings(max_examples=40, deadline=None)
@given(small_instances())
def test_every_check_holds_on_random_instances(h):
    report = check_all(KernelGrid(h))
    assert report.ok, [(r.check, r.point, r.details) for r in report.failures()[:3]]
