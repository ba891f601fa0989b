import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asymcalc.errors import PreconditionViolated
from asymcalc.ivset import Iv, IvSet
from asymcalc.scaleset import (AsymptoticSet, circle_closure, distance_profile,
                               insert_between, prec_union)
from asymcalc.verify.corpus import random_set

sets = st.integers(min_value=0, max_value=10 ** 6).map(
    lambda n: random_set(random.Random(n)))


def test_contains_orbit(A):
    assert A.contains(Q(3, 4))
    assert A.contains(Q(3, 8))        # one block down: 3/8 = (3/4)/2
    assert A.contains(Q(3, 4) / 2 ** 20)
    assert not A.contains(Q(1, 2))


def test_circle_closure_glues_seam():
    # a shape touching sigma from the right picks up the point 1
    s = IvSet([Iv(Q(1, 2), Q(9, 16), False, True)])
    cl = circle_closure(s, Q(1, 2))
    assert cl.contains(1)
    assert not cl.contains(Q(1, 2))


def test_precedes_examples(A, B, P, full):
    assert A.precedes(B)
    assert not B.precedes(A)
    assert P.precedes(A)
    assert A.precedes(full)
    assert full.precedes(full)


def test_insert_between_frozen(A, B):
    M = insert_between(A, B)
    assert M.shape == IvSet.interval(Q(13, 20), Q(17, 20))
    assert A.precedes(M) and M.precedes(B)


def test_insert_between_precondition(A, B):
    with pytest.raises(PreconditionViolated):
        insert_between(B, A)


def test_distance_profile_exact(A):
    d = distance_profile(A)
    assert d.eval(Q(3, 4)) == 0
    assert d.eval(Q(3, 8)) == 0
    # 0.85 is 1/20 above the orbit interval [0.7, 0.8]
    assert d.eval(Q(17, 20)) == Q(1, 20)
    assert d.valuation() is not None


def test_closure_interior(A):
    half_open = AsymptoticSet(Q(1, 2),
                              IvSet([Iv(Q(7, 10), Q(4, 5), False, False)]))
    assert half_open.closure().set_eq(A)
    assert A.interior().set_eq(
        AsymptoticSet(Q(1, 2), IvSet([Iv(Q(7, 10), Q(4, 5), False, False)])))
    assert A.is_closed()
    assert not half_open.is_closed()


def test_set_algebra(A, B, full):
    assert A.intersect(B).set_eq(A)
    assert A.union(B).set_eq(B)
    assert A.complement().union(A).set_eq(full)
    assert not A.complement().intersect(A).is_characteristic()


def test_prec_union():
    S = AsymptoticSet.orbit_interval(Q(3, 5), Q(4, 5), lc=False, hc=False)
    T = AsymptoticSet.orbit_interval(Q(7, 10), Q(9, 10), lc=False, hc=False)
    U = AsymptoticSet.orbit_interval(Q(13, 20), Q(17, 20),
                                     lc=False, hc=False)
    V, W = prec_union(S, T, U)
    assert V.precedes(S) and W.precedes(T)
    assert U.subset_of(V.union(W))


@settings(max_examples=150, deadline=None)
@given(sets, sets)
def test_duality(S, T):
    assert S.precedes(T) == T.complement_like(S).precedes(
        S.complement_like(T))


@settings(max_examples=100, deadline=None)
@given(sets, sets, sets)
def test_precedes_transitive(S, T, U):
    if S.precedes(T) and T.precedes(U):
        assert S.precedes(U)


@settings(max_examples=100, deadline=None)
@given(sets)
def test_closure_operators(S):
    assert S.closure().closure().set_eq(S.closure())
    assert S.interior().interior().set_eq(S.interior())
    assert S.interior().subset_of(S.closure())


def test_serialization_roundtrip(A, P):
    for S in (A, P, A.lower_anchor(2)):
        assert AsymptoticSet.from_dict(S.to_dict()).set_eq(S)
