from fractions import Fraction as Q

import pytest

from asymcalc.errors import ImproperIdeal
from asymcalc.genconst import GenConstant
from asymcalc.ideal import (FgIdeal, annihilator_member, closure_member,
                            f_of_I_member, hb_construct, ideal_member,
                            pure_part_member, radical_member, z_subset,
                            zclosure_member, zpart_member)
from asymcalc.ivset import Iv, IvSet
from asymcalc.pwfunc import PwFunction, TailComponent
from asymcalc.scaleset import AsymptoticSet
from asymcalc.window import Piecewise


def _tent(lo, mid, hi):
    prof = Piecewise.linear_interp(
        [(Q(1, 2), 0), (lo, 0), (mid, 1), (hi, 0), (Q(1), 0)])
    return PwFunction(Q(1, 2), [TailComponent(0, 0, prof)])


def test_proper_and_improper(hat, rho):
    assert FgIdeal([hat]).is_proper()
    assert not FgIdeal([rho]).is_proper()
    assert not FgIdeal([hat, rho]).is_proper()


def test_ideal_member(hat, hat2, osc):
    I = FgIdeal([hat])
    ok, n = ideal_member(hat.mul(PwFunction.upower(5)), I)
    assert ok
    assert ideal_member(PwFunction.const(1), I) == (False, None)
    assert ideal_member(hat2, I) == (False, None)
    assert ideal_member(hat.mul(osc), I)[0]


def test_z_subset(hat, hat2, osc, negl):
    assert z_subset(hat, hat)
    assert z_subset(hat.mul(hat), hat)
    assert z_subset(osc, hat)          # empty zero set is inside anything
    assert not z_subset(hat, osc)
    assert z_subset(hat, negl)         # negligible target accepts all
    assert not z_subset(negl, hat)


def test_f_of_I_member(hat, P, full):
    I = FgIdeal([hat])
    # a closed neighborhood of the zero set of hat (seam-wrapped)
    nbhd = AsymptoticSet(Q(1, 2), IvSet([
        Iv(Q(1, 2), Q(21, 32), False, True), Iv(Q(27, 32), 1, True, True)]))
    assert f_of_I_member(nbhd, I)
    assert not f_of_I_member(P, I)
    assert f_of_I_member(full, I)


def test_radical_member(hat, osc):
    I2 = FgIdeal([hat.mul(hat)])
    ok, m, n = radical_member(hat, I2)
    assert ok and m == 2
    assert not radical_member(PwFunction.const(1), FgIdeal([hat]))[0]
    assert not radical_member(osc, FgIdeal([hat]))[0]


def test_pure_part_member(hat):
    I = FgIdeal([hat])
    assert pure_part_member(hat, I) == (False, None)
    # supported strictly where hat is invertible, away from its zero set
    inside = _tent(Q(21, 32), Q(11, 16), Q(23, 32))
    ok, wit = pure_part_member(inside, I)
    assert ok
    if wit is not None:
        x = GenConstant(inside)
        assert (x * wit).rep.equiv(x.rep)
        assert ideal_member(wit.rep, I)[0]
    assert zpart_member(inside, I)
    assert not zpart_member(hat, I)


def test_pure_rejects_improper(rho, hat):
    with pytest.raises(ImproperIdeal):
        pure_part_member(hat, FgIdeal([rho]))


def test_zclosure_equals_closure(hat, hat2, osc, negl, rho):
    I = FgIdeal([hat])
    for x in (hat, hat2, osc, negl, hat.mul(osc)):
        assert zclosure_member(x, I) == closure_member(x, I)
    assert closure_member(negl, I)


def test_annihilator(hat):
    far = _tent(Q(29, 32), Q(15, 16), Q(31, 32))
    I = FgIdeal([hat])
    assert annihilator_member(far, I)
    assert not annihilator_member(hat, I)


def test_hb_construct():
    J, x, y = hb_construct()
    assert J.is_proper()
    assert not x.is_negligible() and not y.is_negligible()
    assert (x * y).rep.is_zero()
    assert annihilator_member(y, J)
    # the dichotomy instance: no nontrivial idempotent splits this pair
    from asymcalc.genconst import idempotent_class
    assert idempotent_class(x.rep) is None
