import random
from fractions import Fraction

import pytest

from fourfold.algebra import TriState, normalize
from fourfold.alpha import alpha_squared
from fourfold.dsl import format_expr, parse
from fourfold.errors import NotSimplyConnected, UnsupportedExpression
from fourfold.invariants import invariants
from fourfold.obstructions import (
    CheckOutcome,
    Conclusion,
    einstein_existence,
    freedman_class,
    hitchin_thorpe,
    homeomorphic,
    smoothable_form,
    sw_einstein_obstruction,
    verdict,
    verdict_json,
)

from util_exprs import random_expr


def ht_of(text):
    return hitchin_thorpe(invariants(parse(text)))


def sw_of(text):
    e = parse(text)
    return sw_einstein_obstruction(invariants(e), alpha_squared(e))


def test_ht_strict_failure():
    report = ht_of("CP2 # 10*CP2~")
    assert report.plus.lhs == -1  # 4 + 5 - 10
    assert report.plus.outcome is CheckOutcome.FAIL_STRICT
    assert not report.plus_ok


def test_ht_torus_equalities_admissible():
    report = ht_of("T4")
    assert report.plus_equality and report.minus_equality
    assert not report.obstructed
    assert "flat" in report.equality_diagnosis


def test_ht_equality_obstructs_nonspin():
    report = ht_of("3*CP2 # 19*CP2~")
    assert report.plus.lhs == 0  # 4 + 15 - 19
    assert report.plus.outcome is CheckOutcome.EQUALITY_OBSTRUCTED
    assert report.obstructed


def test_ht_equality_k3_undecided_for_homeotype():
    # Same (chi, tau, parity) as K3 but structurally different: no verdict.
    report = ht_of("K3")
    assert report.plus.outcome is CheckOutcome.EQUALITY_UNDECIDED
    assert not report.obstructed


def test_sw_equality_clause_blown_up_cover():
    report = sw_of("Cover(3,6) # CP2~")
    assert report.plus.lhs == 2
    assert report.plus.rhs == 2  # (2/3) * 3
    assert report.plus.outcome is CheckOutcome.EQUALITY_OBSTRUCTED
    assert "K3 or T4" in report.plus.note


def test_sw_strictly_stronger_than_ht():
    report = sw_of("Cover(2,8) # CP2~")
    assert report.plus.lhs == 1
    assert report.plus.rhs == Fraction(4, 3)
    assert report.plus.outcome is CheckOutcome.FAIL_STRICT
    ht = ht_of("Cover(2,8) # CP2~")
    assert ht.plus_ok and ht.plus.lhs == 1


def test_sw_k3_equality_permitted():
    report = sw_of("K3")
    assert report.plus.lhs == 0 and report.plus.rhs == 0
    assert report.plus.outcome is CheckOutcome.EQUALITY_UNDECIDED
    assert not report.obstructed


def test_sw_inconclusive_without_alpha():
    report = sw_of("reverse(Cover(2,8))")
    assert not report.applicable
    assert not report.obstructed


def test_existence_catalog():
    assert einstein_existence(parse("Cover(2,8)")).tag == "AY"
    assert einstein_existence(parse("CP2 # CP2~")).tag == "PAGE"
    assert einstein_existence(parse("CP2 # 5*CP2~")).tag == "TIAN"
    assert einstein_existence(parse("CP2 # 8*CP2~")).tag == "TIAN"
    assert not einstein_existence(parse("CP2 # 2*CP2~")).exists
    assert not einstein_existence(parse("CP2 # 9*CP2~")).exists
    assert einstein_existence(parse("K3")).tag == "HK"
    assert einstein_existence(parse("T4")).tag == "FLAT"
    assert einstein_existence(parse("Cover(2,6)")).tag == "YAU"  # trivial K
    assert einstein_existence(parse("Hyp(6)")).tag == "AY"
    assert not einstein_existence(parse("S4")).exists  # catalog gap, stays unknown
    assert not einstein_existence(parse("Cover(2,2)")).exists


def test_existence_is_orientation_invariant():
    assert einstein_existence(parse("reverse(Cover(2,8))")).tag == "AY"
    assert einstein_existence(parse("reverse(K3)")).tag == "HK"
    assert einstein_existence(parse("reverse(T4)")).tag == "FLAT"
    assert einstein_existence(parse("reverse(CP2 # 5*CP2~)")).tag == "TIAN"
    assert einstein_existence(parse("Surface(c1sq=16, chi_h=3, minimal=yes, ample_K=yes)~")).tag == "AY"


def test_freedman_class_cover():
    ht = freedman_class(invariants(parse("Cover(2,8)")))
    assert (ht.chi, ht.tau, ht.parity) == (46, -30, "odd")
    assert ht.canonical == "7*CP2 # 37*CP2~"
    assert not ht.rokhlin_violation and not ht.donaldson_excluded


def test_freedman_class_k3():
    ht = freedman_class(invariants(parse("K3")))
    assert (ht.chi, ht.tau, ht.parity) == (24, -16, "even")
    assert ht.canonical == "K3"
    # Exactly on the 11/8 line: chi = (11/8)|tau| + 2.
    assert 8 * ht.chi == 11 * abs(ht.tau) + 16
    assert not ht.eleven_eighths_regime


def test_freedman_class_spin_combinations():
    rec = invariants(parse("K3 # 2*S2xS2"))
    ht = freedman_class(rec)
    assert ht.canonical == "2*S2xS2 # K3"
    rev = freedman_class(invariants(parse("reverse(K3)")))
    assert rev.canonical == "reverse(K3)"
    sphere = freedman_class(invariants(parse("S4")))
    assert sphere.canonical == "S4"


def test_freedman_class_requires_simple_connectivity():
    with pytest.raises(NotSimplyConnected):
        freedman_class(invariants(parse("T4 # K3")))
    with pytest.raises(UnsupportedExpression):
        freedman_class(invariants(parse("Cover(4,8)")))  # spin unknown


def test_homeomorphic_paper_pair():
    assert homeomorphic(parse("Cover(3,6) # CP2~"), parse("Cover(2,8)")) is TriState.YES


def test_homeomorphic_parity_distinguishes():
    assert homeomorphic(parse("K3"), parse("3*CP2 # 19*CP2~")) is TriState.NO


def test_homeomorphic_structural_shortcut():
    assert homeomorphic(parse("T4"), parse("T4")) is TriState.YES


def test_homeomorphic_quadric():
    assert homeomorphic(parse("Cover(2,2)"), parse("S2xS2")) is TriState.YES


def test_homeomorphic_unknown_cases():
    assert homeomorphic(parse("T4"), parse("K3")) is TriState.UNKNOWN
    # Cover(4,8) has unknown parity; its chi/tau match the odd candidate.
    rec = invariants(parse("Cover(4,8)"))
    partner = f"{rec.b_plus}*CP2 # {rec.b_minus}*CP2~"
    assert homeomorphic(parse("Cover(4,8)"), parse(partner)) is TriState.UNKNOWN


def test_homeomorphic_differing_chi():
    assert homeomorphic(parse("K3"), parse("K3 # S2xS2")) is TriState.NO


def test_smoothable_form_flags():
    e8 = smoothable_form(0, 8, "even")
    assert e8.donaldson_excluded and e8.rokhlin_violation
    k3 = smoothable_form(3, 19, "even")
    assert not k3.donaldson_excluded and not k3.rokhlin_violation
    assert not smoothable_form(1, 2, "odd").donaldson_excluded


def test_verdict_paper_example():
    v = verdict(parse("Cover(3,6) # CP2~"))
    assert v.conclusion is Conclusion.OBSTRUCTED
    assert v.reason == "SW+ equality"
    assert any("alpha^2 = 3" in line for line in v.certificate)
    v2 = verdict(parse("Cover(2,8)"))
    assert v2.conclusion is Conclusion.EXISTS
    assert v2.reason == "AY"


def test_verdict_examples():
    assert verdict(parse("CP2 # 12*CP2~")).reason == "HT+"
    assert verdict(parse("3*CP2 # 19*CP2~")).reason == "HT+ equality"
    assert verdict(parse("Cover(2,8) # CP2~")).reason == "SW+"
    assert verdict(parse("K3")).conclusion is Conclusion.EXISTS
    assert verdict(parse("T4")).conclusion is Conclusion.EXISTS
    assert verdict(parse("CP2 # 2*CP2~")).conclusion is Conclusion.UNKNOWN
    assert verdict(parse("S4")).conclusion is Conclusion.UNKNOWN


def test_verdict_reversed_equality_clause():
    v = verdict(parse("reverse(3*CP2 # 19*CP2~)"))
    assert v.conclusion is Conclusion.OBSTRUCTED
    assert v.reason == "HT- equality"


def test_verdict_json_shape():
    v = verdict(parse("Cover(3,6) # CP2~"))
    payload = verdict_json(v)
    assert payload["chi"] == 46 and payload["tau"] == -30
    assert payload["b_plus"] == 7 and payload["b_minus"] == 37
    assert payload["spin"] == "no"
    assert payload["alpha_sq"] == {"status": "Exact", "value": "3"}
    assert payload["conclusion"] == "Obstructed(SW+ equality)"
    assert payload["expr"] == "CP2~ # Cover(3,6)"
    assert isinstance(payload["certificate"], list)


def test_equivalence_relation_on_simply_connected_fragment():
    rng = random.Random(2024)
    pool = []
    while len(pool) < 60:
        e = normalize(random_expr(rng, 2))
        r = invariants(e)
        if r.simply_connected is TriState.YES and r.spin is not TriState.UNKNOWN:
            pool.append(e)
    for e in pool:
        assert homeomorphic(e, e) is TriState.YES
    for a, bb in zip(pool, pool[1:]):
        assert homeomorphic(a, bb) == homeomorphic(bb, a)
    for a, bb, c in zip(pool, pool[1:], pool[2:]):
        if homeomorphic(a, bb) is TriState.YES and homeomorphic(bb, c) is TriState.YES:
            assert homeomorphic(a, c) is TriState.YES


def test_freedman_invariance_under_reassociation():
    left = invariants(parse("(Cover(2,8) # CP2) # CP2~"))
    right = invariants(parse("Cover(2,8) # (CP2 # CP2~)"))
    assert freedman_class(left) == freedman_class(right)
