import hashlib

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from llseries.curve import ChainCurve, twist, vanishing_sequence
from llseries.field import PrimeField
from llseries.instances import (
    SequenceSpec,
    adaptable_fixture,
    boundary_paths,
    monomial_instance,
    random_refined,
    random_spec,
    validate,
    witness_fixture,
)
from llseries.kernels import RefinedSeries, SeriesError
from llseries.linalg import Subspace
from llseries.serialize import dumps, instance_to_json
from llseries.uniqueness import chain_adaptable

# sha256 of the serialized instance for three (spec, seed) pairs
GOLDENS = [
    (SequenceSpec(4, 1, (0, 2), (0, 2)), 1, "54d649a8ee5915482b452c6241028e03efcc56d98424a71cb9eba91a048a7752"),
    (SequenceSpec(5, 2, (0, 1, 3), (0, 2, 3)), 2, "c9804e2e35aeb0276d8b76d3a21f21122b87df255aa8c260b4d0f7dd7b671481"),
    (SequenceSpec(6, 1, (1, 4), (0, 2)), 3, "7155d8ad943b5d612bcb4380f09631dfd578b3bbf01dbaedb445da8af04c6b22"),
]


@pytest.mark.parametrize("spec, seed, digest", GOLDENS)
def test_seeded_goldens(spec, seed, digest):
    h = random_refined(spec, seed)
    assert hashlib.sha256(dumps(instance_to_json(h)).encode()).hexdigest() == digest
    assert vanishing_sequence(h.V2, "A") == spec.b
    assert vanishing_sequence(h.V2, "B") == spec.bp
    assert vanishing_sequence(h.V1, "A", 1) == spec.a
    assert vanishing_sequence(h.V3, "B", 3) == spec.c
    assert validate(h).ok


def test_monomial_examples():
    h = monomial_instance(4, (0, 4))
    assert (h.a, h.b, h.bp, h.c) == ((0, 4), (0, 4), (0, 4), (0, 4))
    assert chain_adaptable(h)
    h = monomial_instance(4, (1, 3))
    assert (h.b, h.bp) == ((1, 3), (1, 3))
    assert chain_adaptable(h)
    h = monomial_instance(2, (1,))
    assert (h.r, h.b, h.bp) == (0, (1,), (1,))
    with pytest.raises(SeriesError):
        monomial_instance(4, (3, 1))
    with pytest.raises(SeriesError):
        monomial_instance(4, (0, 5))


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 8), st.data())
def test_monomial_twist_closed_form(d, data):
    exps = tuple(sorted(data.draw(st.sets(st.integers(0, d), min_size=1, max_size=d + 1))))
    h = monomial_instance(d, exps)
    for i in range(d + 1):
        for l in range(d + 1 - i):
            count = sum(1 for m in exps if m >= i and d - m >= l)
            assert twist(h.V2, i, l).dim == count


def test_spec_validation():
    with pytest.raises(SeriesError):
        SequenceSpec(4, 1, (2, 0), (0, 2))
    with pytest.raises(SeriesError):
        SequenceSpec(4, 1, (0, 4), (1, 2))         # b_1 + b'_0 = 5 > d
    with pytest.raises(SeriesError):
        SequenceSpec(4, 1, (0, 2), (0,))
    s = SequenceSpec(4, 1, (0, 2), (0, 2))
    assert s.a == (2, 4) and s.c == (2, 4)
    assert set(s.pairings()) == {(0, 1), (1, 0)}


def test_validate_detects_bad_input():
    assert validate(adaptable_fixture()).ok and validate(witness_fixture()).ok
    curve = ChainCurve(4)
    n = curve.n
    mono = lambda e: tuple(1 if k == e else 0 for k in range(n))
    # V3 orders (0, 4) are not complementary to b' = (0, 2)
    h = RefinedSeries(curve, Subspace.span([mono(2), mono(4)], n), Subspace.span([mono(2), (1, 0, 0, 0, 1)], n),
                      Subspace.span([mono(0), mono(4)], n))
    report = validate(h)
    assert not report.ok
    assert "refined" in {r.check for r in report.failures()}


def test_random_refined_pairing_control():
    spec = SequenceSpec(4, 1, (0, 2), (0, 2))
    assert chain_adaptable(random_refined(spec, 0, pairing="reversed"))
    assert not chain_adaptable(random_refined(spec, 0, pairing=(0, 1)))
    with pytest.raises(SeriesError):
        random_refined(SequenceSpec(4, 1, (0, 3), (0, 2)), 0, pairing=(0, 1))


def test_random_refined_over_prime_field():
    h = random_refined(SequenceSpec(4, 1, (0, 2), (0, 2)), 4, PrimeField(7))
    assert h.b == (0, 2) and validate(h).ok


def test_random_spec_is_admissible():
    rng = np.random.default_rng(0)
    for _ in range(200):
        spec = random_spec(rng, 10, 4)
        assert spec.d <= 10 and spec.r <= 4


def test_boundary_paths_connect_extremes():
    paths = boundary_paths(3)
    assert paths[(1, 2)][0] == (3, 0) and paths[(1, 2)][-1] == (0, 0)
    assert paths[(2, 3)][-1] == (0, 3)
    hyp = paths[(1, 3)]
    assert hyp[0] == (3, 0) and hyp[-1] == (0, 3)
    for (a, b), (c, e) in zip(hyp, hyp[1:]):
        assert (c - a, e - b) in ((-1, 0), (0, 1))
