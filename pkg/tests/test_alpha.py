from fractions import Fraction

import pytest
from hypothesis import given, settings

from fourfold.algebra import TriState
from fourfold.alpha import (
    AlphaStatus,
    alpha_squared,
    mixed_bound_constants,
    scalar_l2_lower_bound,
)
from fourfold.dsl import parse
from fourfold.errors import BoundUnavailable
from fourfold.invariants import invariants

from util_exprs import expr_strategy


def status_of(text):
    return alpha_squared(parse(text))


def test_blown_up_cover_is_minimal_model_value():
    a = status_of("Cover(3,6) # CP2~")
    assert a.status is AlphaStatus.EXACT
    assert a.value == 3
    assert any("R1" in line for line in a.trace)


def test_k3_via_scalar_flat_squeeze():
    a = status_of("K3")
    assert a.status is AlphaStatus.EXACT and a.value == 0
    assert any("R4" in line for line in a.trace)
    assert not any("R1" in line for line in a.trace)


def test_t4_via_scalar_flat_squeeze():
    a = status_of("T4")
    assert a.status is AlphaStatus.EXACT and a.value == 0
    assert any("R4" in line for line in a.trace)


def test_triple_sum_rule():
    a = status_of("3*Cover(2,8)")
    assert a.status is AlphaStatus.EXACT and a.value == 6
    assert any("R2" in line for line in a.trace)
    # b+ = 7 = 3 (mod 4) for each summand
    assert invariants(parse("Cover(2,8)")).b_plus % 4 == 3
    mixed = status_of("K3 # 2*Cover(2,8)")
    assert mixed.status is AlphaStatus.EXACT and mixed.value == 4


def test_triple_sum_blowup_not_covered():
    a = status_of("3*Cover(2,8) # CP2~")
    assert a.status is AlphaStatus.UNKNOWN


def test_positive_scalar_curvature_rule():
    a = status_of("5*CP2 # 9*CP2~")
    assert a.status is AlphaStatus.EXACT and a.value == 0
    assert any("R3" in line for line in a.trace)


def test_undefined_below_two():
    for text in ("CP2", "S4", "CP2 # 3*CP2~", "Hyp(3)"):
        a = status_of(text)
        assert a.status is AlphaStatus.UNDEFINED, text


def test_orientation_sensitivity():
    assert status_of("Cover(2,8)").value == 2
    rev = status_of("reverse(Cover(2,8))")
    assert rev.status is AlphaStatus.UNKNOWN


def test_unknown_for_t4_sums():
    assert status_of("T4 # K3").status is AlphaStatus.UNKNOWN


def test_scalar_l2_lower_bound_values():
    assert scalar_l2_lower_bound(parse("Cover(2,8)")) == 64
    assert scalar_l2_lower_bound(parse("K3")) == 0
    assert scalar_l2_lower_bound(parse("Cover(3,6) # CP2~")) == 96


def test_bound_unavailable():
    with pytest.raises(BoundUnavailable):
        scalar_l2_lower_bound(parse("reverse(Cover(2,8))"))
    with pytest.raises(BoundUnavailable):
        scalar_l2_lower_bound(parse("CP2"))
    with pytest.raises(BoundUnavailable):
        mixed_bound_constants(parse("CP2"))


def test_mixed_bound_constants():
    m = mixed_bound_constants(parse("Cover(3,6) # CP2~"))
    assert m.quadratic == 2
    assert m.linear_sq == 216  # 72 * 3
    assert mixed_bound_constants(parse("K3")).quadratic == 0
    assert mixed_bound_constants(parse("Cover(2,8)")).quadratic == Fraction(4, 3)


@given(expr_strategy)
@settings(max_examples=300)
def test_alpha_values_nonnegative_and_undefined_iff_small_bplus(e):
    a = alpha_squared(e)
    r = invariants(e)
    if r.b_plus < 2:
        assert a.status is AlphaStatus.UNDEFINED
    else:
        assert a.status is not AlphaStatus.UNDEFINED
    if a.value is not None:
        assert a.value >= 0
    assert a.trace


@given(expr_strategy)
@settings(max_examples=300)
def test_psc_expressions_have_zero_alpha(e):
    r = invariants(e)
    a = alpha_squared(e)
    if r.psc is TriState.YES and r.b_plus >= 2:
        assert a.status is AlphaStatus.EXACT
        assert a.value == 0
