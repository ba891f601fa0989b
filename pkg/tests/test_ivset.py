from fractions import Fraction as Q

from hypothesis import given, settings
from hypothesis import strategies as st

from asymcalc.ivset import Iv, IvSet

DOM = Iv(0, 1, True, True)

q16 = st.integers(min_value=0, max_value=16).map(lambda n: Q(n, 16))


@st.composite
def ivsets(draw):
    out = IvSet.empty()
    for _ in range(draw(st.integers(0, 3))):
        a = draw(q16)
        b = draw(q16)
        if a > b:
            a, b = b, a
        if a == b:
            out = out.union(IvSet.point(a))
        else:
            out = out.union(IvSet([Iv(a, b, draw(st.booleans()),
                                      draw(st.booleans()))]))
    return out


def test_basic_membership():
    s = IvSet([Iv(Q(1, 4), Q(1, 2), False, True)])
    assert not s.contains(Q(1, 4))
    assert s.contains(Q(1, 2))
    assert s.contains(Q(3, 8))
    assert not s.contains(Q(3, 4))


def test_union_intersect_difference():
    a = IvSet.interval(0, Q(1, 2))
    b = IvSet.interval(Q(1, 4), 1)
    assert a.union(b).contains(Q(7, 8))
    assert a.intersect(b).contains(Q(3, 8))
    assert not a.intersect(b).contains(Q(1, 8))
    assert a.difference(b, DOM).contains(Q(1, 8))
    assert not a.difference(b, DOM).contains(Q(3, 8))


def test_closure_interior():
    s = IvSet([Iv(Q(1, 4), Q(1, 2), False, False)])
    assert s.closure().contains(Q(1, 4))
    assert not s.interior_rel(DOM).contains(Q(1, 4))
    p = IvSet.point(Q(1, 3))
    assert p.closure().contains(Q(1, 3))
    assert not p.interior_rel(DOM)


@settings(max_examples=200)
@given(ivsets(), ivsets())
def test_de_morgan(a, b):
    lhs = a.union(b).complement(DOM)
    rhs = a.complement(DOM).intersect(b.complement(DOM))
    assert lhs == rhs


@settings(max_examples=200)
@given(ivsets(), ivsets())
def test_subset_via_difference(a, b):
    assert a.subset_of(b) == (not a.difference(b, DOM))


@settings(max_examples=200)
@given(ivsets())
def test_complement_involution(a):
    trimmed = a.intersect(IvSet([DOM]))
    assert trimmed.complement(DOM).complement(DOM) == trimmed


@settings(max_examples=100)
@given(ivsets())
def test_closure_idempotent(a):
    assert a.closure().closure() == a.closure()
    inner = a.interior_rel(DOM)
    assert inner.interior_rel(DOM) == inner
