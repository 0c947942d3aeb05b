import random

import pytest
from hypothesis import given, settings

from fourfold.algebra import (
    Atom,
    AtomKind,
    ConnectedSum,
    Reverse,
    S4,
    CP2,
    CP2REV,
    S2XS2,
    T4,
    K3,
    SurfaceSpec,
    TriState,
    atoms,
    blow_up,
    cyclic_cover,
    hypersurface,
    normalize,
    reverse,
)
from fourfold.errors import DomainError

from util_exprs import expr_strategy, random_expr


def test_reverse_of_cp2_pair_is_itself():
    e = Reverse(ConnectedSum((CP2, CP2REV)))
    assert normalize(e) == normalize(ConnectedSum((CP2, CP2REV)))


def test_nested_sums_flatten():
    e = ConnectedSum((ConnectedSum((CP2, CP2)), CP2REV))
    n = normalize(e)
    assert isinstance(n, ConnectedSum)
    assert atoms(n) == {CP2: 2, CP2REV: 1}


def test_reverse_k3_keeps_tag():
    n = normalize(Reverse(K3))
    assert n == Atom(AtomKind.HYPERSURFACE, (4,), reversed=True)


def test_reverse_atoms():
    assert reverse(CP2) == CP2REV
    assert reverse(CP2REV) == CP2
    assert reverse(S4) == S4
    assert reverse(S2XS2) == S2XS2
    assert reverse(cyclic_cover(3, 6)) == cyclic_cover(3, 6, reversed=True)
    assert reverse(T4) == Atom(AtomKind.T4, reversed=True)


def test_s4_is_identity_for_connected_sum():
    assert normalize(ConnectedSum((S4, K3))) == K3
    assert normalize(ConnectedSum((S4, S4))) == S4
    assert normalize(ConnectedSum((S4,))) == S4


def test_atoms_multiset():
    e = ConnectedSum((cyclic_cover(3, 6), CP2REV))
    assert atoms(e) == {cyclic_cover(3, 6): 1, CP2REV: 1}
    assert atoms(T4) == {T4: 1}
    e2 = ConnectedSum((CP2,) * 7 + (CP2REV,) * 37)
    assert atoms(e2) == {CP2: 7, CP2REV: 37}


def test_blow_up_is_sum_with_reversed_plane():
    assert blow_up(K3, 2) == normalize(ConnectedSum((K3, CP2REV, CP2REV)))
    assert blow_up(K3, 0) == K3


def test_atom_validation():
    with pytest.raises(DomainError):
        hypersurface(0)
    with pytest.raises(DomainError):
        cyclic_cover(3, 7)
    with pytest.raises(DomainError):
        cyclic_cover(1, 5)


def test_surface_spec_gates():
    with pytest.raises(DomainError):
        SurfaceSpec(c1sq=0, chi_h=0)  # chi_h >= 1
    with pytest.raises(DomainError):
        SurfaceSpec(c1sq=50, chi_h=5)  # Chern bound
    with pytest.raises(DomainError):
        SurfaceSpec(c1sq=1, chi_h=1, ample_K=True, minimal=False)
    with pytest.raises(DomainError):
        SurfaceSpec(c1sq=2, chi_h=1, minimal=True, spin=TriState.YES)  # Rokhlin
    with pytest.raises(DomainError):
        SurfaceSpec(c1sq=9, chi_h=1, minimal=True, ample_K=True)  # fake-plane data
    with pytest.raises(DomainError):
        SurfaceSpec(c1sq=-1, chi_h=1, minimal=True)


@given(expr_strategy)
@settings(max_examples=300)
def test_normalize_idempotent(e):
    n = normalize(e)
    assert normalize(n) == n


@given(expr_strategy)
@settings(max_examples=300)
def test_reverse_involution(e):
    assert reverse(reverse(e)) == normalize(e)


@given(expr_strategy)
@settings(max_examples=200)
def test_reverse_distributes_over_sums(e):
    lhs = normalize(Reverse(ConnectedSum((e, CP2))))
    rhs = normalize(ConnectedSum((Reverse(e), Reverse(CP2))))
    assert lhs == rhs


def test_sum_order_independence():
    rng = random.Random(5)
    for _ in range(100):
        parts = [random_expr(rng, 1) for _ in range(rng.randint(2, 5))]
        shuffled = parts[:]
        rng.shuffle(shuffled)
        assert normalize(ConnectedSum(tuple(parts))) == normalize(
            ConnectedSum(tuple(shuffled))
        )
