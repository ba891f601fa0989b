from fractions import Fraction as Q

import pytest

from asymcalc.errors import AllSamplesZero, PreconditionViolated, UnknownCheck
from asymcalc.pwfunc import PwFunction
from asymcalc.verify import (OracleConfig, available_checks, corpus_generate,
                             oracle_valuation, oracle_vanishes_on, run_checks)

CFG = OracleConfig(depth=1600)


def test_oracle_valuation_rho(rho):
    est = oracle_valuation(rho, CFG)
    assert not est.diverging
    assert est.contains(1)
    assert est.hi - est.lo <= 0.11


def test_oracle_valuation_osc(osc):
    est = oracle_valuation(osc, CFG)
    assert not est.diverging
    assert est.contains(1)


def test_oracle_flags_negligible(negl):
    est = oracle_valuation(negl, CFG)
    assert est.diverging
    assert est.contains(None)


def test_oracle_all_samples_zero():
    with pytest.raises(AllSamplesZero):
        oracle_valuation(PwFunction.zero(), CFG)


def test_oracle_vanishes_on(hat, P, full):
    from asymcalc.scaleset import AsymptoticSet
    Z = AsymptoticSet.orbit_interval(Q(17, 32), Q(19, 32))
    assert oracle_vanishes_on(hat, Z, CFG) in (True, None)
    assert oracle_vanishes_on(hat, P, CFG) in (False, None)


def test_corpus_deterministic():
    a = corpus_generate(11, 12)
    b = corpus_generate(11, 12)
    assert [e.to_dict() for e in a.elements] == \
        [e.to_dict() for e in b.elements]
    assert [s.to_dict() for s in a.sets] == [s.to_dict() for s in b.sets]


def test_corpus_size_cap():
    with pytest.raises(PreconditionViolated):
        corpus_generate(0, 10 ** 6)


def test_corpus_spans_kinds():
    c = corpus_generate(1, 40)
    kinds = {type(f).__name__ for f in c.filters}
    assert len(kinds) >= 2
    rs = {comp.r for e in c.elements for comp in e.comps}
    assert rs >= {0, 1, 2}
    assert any(s.shape.points() for s in c.sets)
    assert any(s.shape.fat_part() for s in c.sets)
    assert any(len(i.gens) > 1 for i in c.ideals)


def test_unknown_check():
    with pytest.raises(UnknownCheck):
        run_checks("no-such-check", seed=0)


def test_named_checks_present():
    names = available_checks()
    assert "ext-eltair-duality" in names
    assert "prime-ideal-char" in names


def test_reports_reproducible():
    a = run_checks("ext-eltair-duality", seed=5, size=10)[0]
    b = run_checks("ext-eltair-duality", seed=5, size=10)[0]
    assert a.canonical_bytes() == b.canonical_bytes()
    assert a.passed


def test_interior_closure_check_passes():
    r = run_checks("interior-closure", seed=2, size=10)[0]
    assert r.passed and r.instances > 0
