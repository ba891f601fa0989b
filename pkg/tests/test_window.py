from fractions import Fraction as Q

import pytest

from asymcalc.errors import ContinuityViolation, ZeroDenominator
from asymcalc.ivset import IvSet
from asymcalc.window import Piecewise, Seg


def test_continuity_enforced():
    with pytest.raises(ContinuityViolation):
        Piecewise([Seg(0, 1, (0,)), Seg(1, 2, (1,))])


def test_denominator_roots_rejected():
    # den = w - 3/4 vanishes inside the segment
    with pytest.raises(ZeroDenominator):
        Seg(Q(1, 2), 1, (1,), (Q(-3, 4), 1))


def test_linear_interp_eval():
    f = Piecewise.linear_interp([(0, 0), (Q(1, 2), 1), (1, 0)])
    assert f.eval(Q(1, 4)) == Q(1, 2)
    assert f.eval(Q(1, 2)) == 1
    assert f.eval(Q(7, 8)) == Q(1, 4)


def test_from_poly_eval():
    f = Piecewise.from_poly(Q(1, 2), 1, (0, 3, -6, 4))
    assert f.eval(Q(3, 4)) == Q(9, 16)
    assert f.eval(1) == 1
    assert f.eval(Q(1, 2)) == Q(1, 2)


def test_arithmetic():
    f = Piecewise.linear_interp([(0, 0), (1, 1)])
    g = Piecewise.const(0, 1, 2)
    assert f.add(g).eval(Q(1, 2)) == Q(5, 2)
    assert f.mul(f).eval(Q(1, 3)) == Q(1, 9)
    assert f.sub(f).is_zero()
    assert f.neg().eval(Q(1, 4)) == Q(-1, 4)
    assert f.scale(3).eval(Q(1, 3)) == 1


def test_flat_zero_and_isolated_zeros():
    f = Piecewise.linear_interp([(0, 0), (Q(1, 4), 0), (Q(1, 2), 1), (1, 0)])
    flat = f.flat_zero()
    assert flat.contains(Q(1, 8))
    assert not flat.contains(Q(1, 2))
    assert f.isolated_zeros() == [1]


def test_quadratic_isolated_zero():
    # 2w^2 - 1 has the irrational zero sqrt(1/2) in [1/2, 1]
    f = Piecewise.from_poly(Q(1, 2), 1, (-1, 0, 2))
    zs = f.isolated_zeros()
    assert len(zs) == 1
    z = zs[0]
    assert not isinstance(z, Q)


def test_restrict_and_concat():
    f = Piecewise.linear_interp([(0, 0), (1, 2)])
    r = f.restrict(Q(1, 4), Q(3, 4))
    assert r.lo == Q(1, 4) and r.hi == Q(3, 4)
    assert r.eval(Q(1, 2)) == 1


def test_nonneg_on_all():
    f = Piecewise.linear_interp([(0, 0), (1, 1)])
    assert f.nonneg_on_all()
    assert not f.sub(Piecewise.const(0, 1, 1)).nonneg_on_all()
