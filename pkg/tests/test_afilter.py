from fractions import Fraction as Q

import pytest

from asymcalc.afilter import (FG, Closure, CounterExample, Interior, OfIdeal,
                              Verified, filter_member, i_of_f_member,
                              prec_interval_basis, prime_check,
                              pseudoprime_check, rapid_element, rapid_witness)
from asymcalc.errors import (ChainNotDescending, ImproperFilter, NotMember,
                             PreconditionViolated)
from asymcalc.ideal import FgIdeal
from asymcalc.scaleset import AsymptoticSet, insert_between


def test_fg_membership(A, B, P, full):
    F = FG([A])
    assert filter_member(F, B)
    assert filter_member(F, A)
    assert not filter_member(F, P)
    assert filter_member(F, full)


def test_fg_member_needs_closed(A):
    F = FG([A])
    open_set = AsymptoticSet.orbit_interval(Q(3, 5), Q(9, 10),
                                            lc=False, hc=False)
    with pytest.raises(PreconditionViolated):
        filter_member(F, open_set)


def test_fg_rejects_improper():
    left = AsymptoticSet.orbit_interval(Q(9, 16), Q(5, 8))
    right = AsymptoticSet.orbit_interval(Q(3, 4), Q(7, 8))
    with pytest.raises(ImproperFilter):
        FG([left, right])


def test_interior_closure_membership(A, B):
    F = FG([A])
    assert filter_member(Interior(F), B)      # A strictly inside B
    assert not filter_member(Interior(F), A)  # not strictly inside itself
    assert filter_member(Closure(F), A)


def test_normalize_laws(A):
    F = FG([A])
    assert isinstance(Interior(Interior(F)).normalize(), Interior)
    assert isinstance(Closure(Closure(F)).normalize(), Closure)
    assert isinstance(Interior(Closure(F)).normalize(), Interior)
    assert isinstance(Closure(Interior(F)).normalize(), Closure)


def test_ofideal_membership(hat, full):
    from asymcalc.ivset import Iv, IvSet
    F = OfIdeal(FgIdeal([hat]))
    nbhd = AsymptoticSet(Q(1, 2), IvSet([
        Iv(Q(1, 2), Q(21, 32), False, True), Iv(Q(27, 32), 1, True, True)]))
    assert filter_member(F, nbhd)
    assert filter_member(F, full)
    assert not filter_member(F, AsymptoticSet.orbit_point(Q(3, 4)))
    # interior of the ideal filter is itself
    assert isinstance(Interior(F).normalize(), OfIdeal)


def test_i_of_f_member(hat, A, B):
    F = FG([A])
    assert not i_of_f_member(hat, F)   # hat(3/4) = 1 on the base
    Z = FG([AsymptoticSet.orbit_interval(Q(17, 32), Q(19, 32))])
    assert i_of_f_member(hat, Z)


def test_pseudoprime_refuted_for_fg(A, P):
    for S in (A, P):
        res = pseudoprime_check(FG([S]), trials=100, seed=7)
        assert isinstance(res, CounterExample)
        full = AsymptoticSet.full()
        assert full.subset_of(res.S.interior().union(res.T.interior()))
        assert not filter_member(FG([S]), res.S)
        assert not filter_member(FG([S]), res.T)


def test_prime_refuted_for_fg(A):
    F = FG([A])
    res = prime_check(F, trials=100, seed=7)
    assert isinstance(res, CounterExample)
    assert filter_member(F, res.S.union(res.T))
    assert not filter_member(F, res.S)
    assert not filter_member(F, res.T)


def test_result_truthiness():
    # Verified is truthy ("property held"), CounterExample is falsy
    assert bool(Verified(trials=10))
    S = AsymptoticSet.full()
    assert not bool(CounterExample(S, S))


def _chain(L=4):
    return [AsymptoticSet.orbit_interval(Q(40 - k, 64), Q(48 + k, 64))
            for k in range(L, 0, -1)]


def test_rapid_witness():
    chain = _chain()
    F = FG([c.closure() for c in chain])
    base = rapid_witness(F, chain)
    assert base.set_eq(chain[-1])


def test_rapid_witness_rejects_bad_chains(A, B):
    F = FG([B])
    with pytest.raises(NotMember):
        rapid_witness(F, [AsymptoticSet.orbit_point(Q(3, 4))])
    with pytest.raises(ChainNotDescending):
        rapid_witness(F, [B, B])


def test_rapid_element_sandwich():
    chain = _chain()
    phi = rapid_element(chain)
    x = phi.rep
    assert [c.s for c in x.comps] == [1, 2, 3, 4]
    # on the flat core of band n the element equals u^n exactly
    for n, an in ((1, Q(36, 64)), (2, Q(37, 64)), (3, Q(38, 64)),
                  (4, Q(39, 64))):
        for k in (1, 3, 9):
            u = an * Q(1, 2) ** k
            assert x.eval(u) == u ** n


def test_rapid_element_six_term_chain():
    chain = _chain(6)
    phi = rapid_element(chain)
    assert [c.s for c in phi.rep.comps] == [1, 2, 3, 4, 5, 6]


def test_prec_interval_basis(A, B, full):
    pred = prec_interval_basis(A, B)
    assert pred(insert_between(A, B))
    assert not pred(A)
    assert not pred(full)
    pf = prec_interval_basis(full, full)
    assert pf(full)
