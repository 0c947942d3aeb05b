"""Expression algebra for smooth compact oriented 4-manifolds.

Expressions are built from a fixed stock of atoms (spheres, projective
planes, tori, hypersurfaces in CP^3, cyclic branched covers of CP^2, and
user-described complex surfaces), closed under connected sum and
orientation reversal.  ``normalize`` computes a canonical form: reversal
is pushed onto atoms, sums are flattened, S4 summands are dropped (it is
the identity for connected sum), and atoms are sorted by a fixed total
order.  Two expressions denote the same object of this algebra exactly
when their canonical forms compare equal.

All values are immutable; sharing across threads is safe.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from enum import Enum

from .errors import DomainError


class TriState(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, flag: bool) -> "TriState":
        return cls.YES if flag else cls.NO


def tri_all(values) -> TriState:
    """Three-valued conjunction: NO dominates, then UNKNOWN, else YES."""
    values = list(values)
    if any(v is TriState.NO for v in values):
        return TriState.NO
    if any(v is TriState.UNKNOWN for v in values):
        return TriState.UNKNOWN
    return TriState.YES


class AtomKind(Enum):
    S4 = "S4"
    CP2 = "CP2"
    CP2REV = "CP2~"
    S2XS2 = "S2xS2"
    T4 = "T4"
    HYPERSURFACE = "Hyp"
    CYCLIC_COVER = "Cover"
    SURFACE = "Surface"


_KIND_ORDER = {kind: i for i, kind in enumerate(AtomKind)}
_TRI_ORDER = {TriState.YES: 0, TriState.NO: 1, TriState.UNKNOWN: 2}


@dataclass(frozen=True)
class SurfaceSpec:
    """Numerical description of a compact complex surface with q = 0.

    ``chi_h`` is the holomorphic Euler characteristic; irregularity zero is
    assumed throughout, so b+ = 2*chi_h - 1 and b1 = 0.  Construction
    validates the data against the standard constraints for such surfaces
    (Noether consistency, non-negative b-, Rokhlin when spin, and the
    Chern number bound c1^2 <= 9*chi_h, strict for simply connected
    surfaces with ample canonical bundle).  Data that fails a gate cannot
    describe a surface of this kind and is rejected outright.
    """

    c1sq: int
    chi_h: int
    minimal: bool = False
    ample_K: bool = False
    spin: TriState = TriState.UNKNOWN
    simply_connected: bool = True

    def __post_init__(self):
        if self.chi_h < 1:
            raise DomainError("surface requires chi_h >= 1 (irregularity zero)")
        euler = 12 * self.chi_h - self.c1sq
        if euler < 3:
            raise DomainError(f"surface Euler number {euler} < 3")
        if (self.c1sq - 2 * euler) % 3 != 0:
            raise DomainError("surface signature would not be an integer")
        tau = (self.c1sq - 2 * euler) // 3
        b_plus = 2 * self.chi_h - 1
        if b_plus - tau < 0:
            raise DomainError("surface data gives negative b-")
        if self.ample_K and not self.minimal:
            raise DomainError("ample canonical bundle forces minimality")
        if self.minimal and self.c1sq < 0:
            raise DomainError("minimal surface with q = 0 has c1^2 >= 0")
        if self.c1sq > 9 * self.chi_h:
            raise DomainError("c1^2 > 9*chi_h violates the Chern number bound")
        if self.c1sq == 9 * self.chi_h and self.ample_K and self.simply_connected:
            raise DomainError(
                "c1^2 = 9*chi_h with ample K forces an aspherical surface; "
                "it cannot be simply connected"
            )
        if self.spin is TriState.YES and tau % 16 != 0:
            raise DomainError(f"spin surface must have signature divisible by 16 (got {tau})")

    def sort_key(self):
        return (
            self.c1sq,
            self.chi_h,
            int(self.minimal),
            int(self.ample_K),
            _TRI_ORDER[self.spin],
            int(self.simply_connected),
        )


@dataclass(frozen=True)
class Atom:
    """A building-block 4-manifold with an orientation flag.

    Parameters: HYPERSURFACE carries (d,) for a smooth degree-d surface in
    CP^3; CYCLIC_COVER carries (p, d) for the p-fold cyclic cover of CP^2
    branched over a smooth curve of degree d (p must divide d); SURFACE
    carries a SurfaceSpec.  In canonical form the flag is used only for
    atoms without a dedicated mirror kind: CP2/CP2~ absorb each other's
    reversal, and S4, S2xS2 are orientation-symmetric.
    """

    kind: AtomKind
    params: tuple[int, ...] = ()
    surface: SurfaceSpec | None = None
    reversed: bool = False

    def __post_init__(self):
        k = self.kind
        if k is AtomKind.HYPERSURFACE:
            if len(self.params) != 1:
                raise DomainError("hypersurface atom takes exactly one parameter")
            if self.params[0] < 1:
                raise DomainError(f"hypersurface degree must be >= 1 (got {self.params[0]})")
        elif k is AtomKind.CYCLIC_COVER:
            if len(self.params) != 2:
                raise DomainError("cyclic cover atom takes exactly two parameters")
            p, d = self.params
            if p < 2:
                raise DomainError(f"cyclic cover requires p >= 2 (got {p})")
            if d < 1 or d % p != 0:
                raise DomainError(f"cyclic cover requires p | d (got p={p}, d={d})")
        elif self.params:
            raise DomainError(f"{k.value} atom takes no parameters")
        if (self.surface is not None) != (k is AtomKind.SURFACE):
            raise DomainError("surface data is carried by Surface atoms only")

    @property
    def degree(self) -> int:
        return self.params[0]

    @property
    def cover_p(self) -> int:
        return self.params[0]

    @property
    def cover_d(self) -> int:
        return self.params[1]

    def sort_key(self):
        skey = self.surface.sort_key() if self.surface is not None else ()
        return (_KIND_ORDER[self.kind], self.params, skey, self.reversed)


@dataclass(frozen=True)
class ConnectedSum:
    parts: tuple

    def __post_init__(self):
        if not self.parts:
            raise DomainError("connected sum needs at least one summand")


@dataclass(frozen=True)
class Reverse:
    inner: "ManifoldExpr"


ManifoldExpr = Atom | ConnectedSum | Reverse


S4 = Atom(AtomKind.S4)
CP2 = Atom(AtomKind.CP2)
CP2REV = Atom(AtomKind.CP2REV)
S2XS2 = Atom(AtomKind.S2XS2)
T4 = Atom(AtomKind.T4)


def hypersurface(d: int, reversed: bool = False) -> Atom:
    return Atom(AtomKind.HYPERSURFACE, (d,), reversed=reversed)


def cyclic_cover(p: int, d: int, reversed: bool = False) -> Atom:
    return Atom(AtomKind.CYCLIC_COVER, (p, d), reversed=reversed)


def surface_atom(spec: SurfaceSpec, reversed: bool = False) -> Atom:
    return Atom(AtomKind.SURFACE, (), surface=spec, reversed=reversed)


# One model of K3 is the quartic in CP^3; normalization identifies the two.
K3 = hypersurface(4)


def connected_sum(*parts: ManifoldExpr) -> ConnectedSum:
    return ConnectedSum(tuple(parts))


def blow_up(e: ManifoldExpr, n: int = 1) -> ManifoldExpr:
    """Blowing up n points: connected sum with n copies of CP2~."""
    if n < 0:
        raise DomainError("blow-up count must be >= 0")
    if n == 0:
        return normalize(e)
    return normalize(ConnectedSum((e,) + (CP2REV,) * n))


def _flip(a: Atom) -> Atom:
    """Orientation reversal of a single unflagged atom."""
    if a.kind in (AtomKind.S4, AtomKind.S2XS2):
        return a  # admits an orientation-reversing self-diffeomorphism
    if a.kind is AtomKind.CP2:
        return CP2REV
    if a.kind is AtomKind.CP2REV:
        return CP2
    return replace(a, reversed=True)


def _canon_atom(a: Atom) -> Atom:
    if a.reversed:
        return _flip(replace(a, reversed=False))
    return a


def _collect(e: ManifoldExpr, rev: bool, out: list):
    if isinstance(e, Atom):
        a = replace(e, reversed=e.reversed ^ rev) if rev else e
        out.append(_canon_atom(a))
    elif isinstance(e, Reverse):
        _collect(e.inner, not rev, out)
    elif isinstance(e, ConnectedSum):
        for p in e.parts:
            _collect(p, rev, out)
    else:
        raise DomainError(f"not a manifold expression: {e!r}")


def normalize(e: ManifoldExpr) -> ManifoldExpr:
    """Canonical form: reversal at the atoms, flat sorted sum, no S4 summands."""
    parts: list[Atom] = []
    _collect(e, False, parts)
    parts = [a for a in parts if a.kind is not AtomKind.S4]
    if not parts:
        return S4
    parts.sort(key=Atom.sort_key)
    if len(parts) == 1:
        return parts[0]
    return ConnectedSum(tuple(parts))


def reverse(e: ManifoldExpr) -> ManifoldExpr:
    """Canonical form of the orientation reversal; an involution."""
    return normalize(Reverse(e))


def atoms(e: ManifoldExpr) -> Counter:
    """Multiset of atom occurrences in the canonical form."""
    n = normalize(e)
    if isinstance(n, Atom):
        return Counter([n])
    return Counter(n.parts)
