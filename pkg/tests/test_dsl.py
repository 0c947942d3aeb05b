import random

import pytest
from hypothesis import given, settings

from fourfold.algebra import (
    Atom,
    AtomKind,
    ConnectedSum,
    CP2,
    CP2REV,
    SurfaceSpec,
    TriState,
    cyclic_cover,
    hypersurface,
    normalize,
    surface_atom,
)
from fourfold.dsl import format_expr, parse
from fourfold.errors import DomainError, ParseError

from util_exprs import expr_strategy, random_expr


def test_parse_paper_style_sums():
    assert parse("Cover(3,6) # CP2~") == normalize(
        ConnectedSum((cyclic_cover(3, 6), CP2REV))
    )
    e = parse("7*CP2 # 37*CP2~")
    assert isinstance(e, ConnectedSum)
    assert len(e.parts) == 44


def test_parse_invalid_degree_is_domain_error():
    with pytest.raises(DomainError) as err:
        parse("Hyp(0)")
    assert err.value.position == 0


def test_parse_invalid_cover():
    with pytest.raises(DomainError):
        parse("Cover(3,7)")


def test_parse_reverse_and_tilde():
    assert parse("reverse(Cover(2,8))") == cyclic_cover(2, 8, reversed=True)
    assert parse("Cover(2,8)~") == cyclic_cover(2, 8, reversed=True)
    assert parse("K3~") == hypersurface(4, reversed=True)
    assert parse("CP2~") == CP2REV
    assert parse("S4~") == Atom(AtomKind.S4)


def test_parse_k3_alias():
    assert parse("K3") == hypersurface(4)
    assert parse("Hyp(4)") == parse("K3")


def test_parse_counts_and_parens():
    assert parse("2*(CP2 # CP2~)") == parse("2*CP2 # 2*CP2~")
    with pytest.raises(DomainError):
        parse("0*CP2")


def test_parse_surface():
    e = parse("Surface(c1sq=16, chi_h=3, minimal=yes, ample_K=yes, spin=no)")
    assert e == surface_atom(
        SurfaceSpec(c1sq=16, chi_h=3, minimal=True, ample_K=True, spin=TriState.NO)
    )
    with pytest.raises(DomainError):
        parse("Surface(c1sq=1)")
    with pytest.raises(ParseError):
        parse("Surface(c1sq=1, chi_h=1, spin=maybe)")
    with pytest.raises(ParseError):
        parse("Surface(c1sq=1, c1sq=2, chi_h=1)")


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse("CP2 @ K3")
    assert err.value.position == 4
    with pytest.raises(ParseError) as err:
        parse("CP2 # ")
    assert err.value.position == 6
    with pytest.raises(ParseError) as err:
        parse("Frob")
    assert err.value.position == 0
    assert err.value.expected


def test_format_examples():
    assert format_expr(ConnectedSum((CP2,) + (CP2REV,) * 10)) == "CP2 # 10*CP2~"
    assert format_expr(hypersurface(4)) == "K3"
    assert format_expr(cyclic_cover(2, 8, reversed=True)) == "reverse(Cover(2,8))"
    assert format_expr(Atom(AtomKind.S4)) == "S4"


@given(expr_strategy)
@settings(max_examples=400)
def test_round_trip(e):
    n = normalize(e)
    assert parse(format_expr(n)) == n


def _mutate(rng, text):
    ops = rng.randint(0, 2)
    chars = list(text)
    for _ in range(ops + 1):
        kind = rng.random()
        pos = rng.randrange(len(chars) + 1)
        if kind < 0.4 and chars:
            del chars[min(pos, len(chars) - 1)]
        elif kind < 0.8:
            chars.insert(pos, rng.choice("#*()~=,KXy3 "))
        else:
            chars.insert(pos, rng.choice("CoverHypSurface"))
    return "".join(chars)


def test_error_positions_monotone():
    # Truncating at a reported error offset must not fail later than the
    # original report.  (Truncation at the very end reproduces the input,
    # so only positions inside the string are informative.)
    rng = random.Random(99)
    checked = 0
    for _ in range(400):
        base = format_expr(normalize(random_expr(rng, 2)))
        text = _mutate(rng, base)
        try:
            parse(text)
        except ParseError as err:
            pos = err.position
            assert 0 <= pos <= len(text)
            if pos < len(text):
                checked += 1
                try:
                    parse(text[:pos])
                except ParseError as err2:
                    assert err2.position <= pos
                except DomainError:
                    pass
        except DomainError:
            continue
    assert checked > 20
