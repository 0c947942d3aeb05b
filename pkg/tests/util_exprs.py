"""Shared expression generators for the test suite.

``random_expr`` is a plain seeded generator for bulk fuzzing; the
hypothesis strategies below are for the finer-grained property tests.
"""

import random

from hypothesis import strategies as st

from fourfold.algebra import (
    Atom,
    AtomKind,
    ConnectedSum,
    Reverse,
    SurfaceSpec,
    TriState,
    cyclic_cover,
    hypersurface,
    surface_atom,
)

# All entries pass the construction gates; values cover spin/non-spin,
# minimal/non-minimal, ample and not, simply connected and not.
SURFACE_POOL = (
    SurfaceSpec(c1sq=0, chi_h=2, minimal=True, spin=TriState.YES),
    SurfaceSpec(c1sq=0, chi_h=4, minimal=True, spin=TriState.YES),
    SurfaceSpec(c1sq=1, chi_h=1, minimal=True, ample_K=True, spin=TriState.NO),
    SurfaceSpec(c1sq=16, chi_h=3, minimal=True, ample_K=True, spin=TriState.NO),
    SurfaceSpec(c1sq=9, chi_h=5, minimal=True, ample_K=True),
    SurfaceSpec(c1sq=8, chi_h=1, minimal=False),
    SurfaceSpec(c1sq=0, chi_h=1, minimal=True, spin=TriState.NO, simply_connected=False),
)

_COVER_PAIRS = [
    (p, p * k) for p in (2, 3, 4, 5, 6) for k in (1, 2, 3, 4) if p * k <= 12
]

_SIMPLE = (
    Atom(AtomKind.S4),
    Atom(AtomKind.CP2),
    Atom(AtomKind.CP2REV),
    Atom(AtomKind.S2XS2),
    Atom(AtomKind.T4),
)


def random_atom(rng: random.Random) -> Atom:
    roll = rng.random()
    if roll < 0.45:
        return rng.choice(_SIMPLE)
    if roll < 0.65:
        return hypersurface(rng.randint(1, 9), reversed=rng.random() < 0.2)
    if roll < 0.85:
        p, d = rng.choice(_COVER_PAIRS)
        return cyclic_cover(p, d, reversed=rng.random() < 0.2)
    return surface_atom(rng.choice(SURFACE_POOL), reversed=rng.random() < 0.2)


def random_expr(rng: random.Random, depth: int = 2):
    if depth == 0 or rng.random() < 0.4:
        return random_atom(rng)
    roll = rng.random()
    if roll < 0.25:
        return Reverse(random_expr(rng, depth - 1))
    parts = tuple(random_expr(rng, depth - 1) for _ in range(rng.randint(1, 4)))
    return ConnectedSum(parts)


atom_strategy = st.one_of(
    st.sampled_from(_SIMPLE),
    st.builds(hypersurface, st.integers(1, 9), reversed=st.booleans()),
    st.builds(
        lambda pair, rev: cyclic_cover(pair[0], pair[1], reversed=rev),
        st.sampled_from(_COVER_PAIRS),
        st.booleans(),
    ),
    st.builds(surface_atom, st.sampled_from(SURFACE_POOL), reversed=st.booleans()),
)

expr_strategy = st.recursive(
    atom_strategy,
    lambda children: st.one_of(
        st.builds(Reverse, children),
        st.lists(children, min_size=1, max_size=4).map(lambda ps: ConnectedSum(tuple(ps))),
    ),
    max_leaves=8,
)
