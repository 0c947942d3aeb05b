"""Exact topological and complex-geometric invariants of canonical expressions.

Everything here is integer arithmetic.  Connected sums obey

    chi(M1 # M2) = chi(M1) + chi(M2) - 2,      tau additive,
    b+/b- additive,                            spin iff all summands spin,

and orientation reversal swaps b+ with b-, negates tau, and leaves chi,
spin, simple connectivity, and the metric-existence flags (psc,
scalar_flat) alone.  Complex-surface data is attached exactly when the
canonical form is one standard-orientation complex atom plus k >= 0
copies of CP2~ (its k-fold blow-up) and the minimal model is known.

The psc / scalar_flat fields are catalog flags, not decision procedures:
``yes`` and ``no`` record facts the engine can justify, ``unknown`` is
the honest default.  In particular scalar_flat tracks the Ricci-flat
Kaehler route (trivial canonical class) only.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .algebra import (
    Atom,
    AtomKind,
    ConnectedSum,
    ManifoldExpr,
    SurfaceSpec,
    TriState,
    normalize,
    tri_all,
)
from .errors import ConsistencyError, DomainError, PreconditionViolation


@dataclass(frozen=True)
class ComplexData:
    """Chern data of a complex-surface expression M ~ X # k*CP2~.

    c1sq is c1^2 of M itself, c1sq_minimal_model is c1^2 of the minimal
    model X, and blowup_count is the total number of blow-downs from M to
    X.  These satisfy c1sq = c1sq_minimal_model - blowup_count and the
    Noether relation 12*chi_h = c1sq + chi.
    """

    c1sq: int
    c1sq_minimal_model: int
    chi_h: int
    ample_K: bool
    minimal: bool
    blowup_count: int
    is_complex: bool = True


@dataclass(frozen=True)
class InvariantRecord:
    chi: int
    tau: int
    b_plus: int
    b_minus: int
    b1: int | None  # None means unknown
    spin: TriState
    simply_connected: TriState
    complex_data: ComplexData | None
    psc: TriState  # admits a metric of positive scalar curvature
    scalar_flat: TriState  # admits a metric with s == 0 (Ricci-flat route)

    @property
    def b2(self) -> int:
        return self.b_plus + self.b_minus

    @property
    def two_chi_plus_3tau(self) -> int:
        return 2 * self.chi + 3 * self.tau

    @property
    def two_chi_minus_3tau(self) -> int:
        return 2 * self.chi - 3 * self.tau


def _swap_orientation(r: InvariantRecord) -> InvariantRecord:
    return replace(
        r,
        tau=-r.tau,
        b_plus=r.b_minus,
        b_minus=r.b_plus,
        complex_data=None,
    )


def hypersurface_invariants(d: int) -> InvariantRecord:
    """Smooth degree-d hypersurface in CP^3.

    chi = d^3 - 4d^2 + 6d, c1^2 = d(4-d)^2, tau = (4d - d^3)/3, spin iff
    d is even; simply connected by the Lefschetz hyperplane theorem.  The
    cubic (d = 3) is the plane blown up six times; every other degree is
    minimal.  K is ample from degree 5 on; d <= 3 admits positive scalar
    curvature, and d = 4 carries the Ricci-flat metric.
    """
    if d < 1:
        raise DomainError(f"hypersurface degree must be >= 1 (got {d})")
    chi = d**3 - 4 * d**2 + 6 * d
    c1sq = d * (4 - d) ** 2
    tau = (4 * d - d**3) // 3
    chi_h = (c1sq + chi) // 12
    b_plus = 2 * chi_h - 1
    minimal = d != 3
    data = ComplexData(
        c1sq=c1sq,
        c1sq_minimal_model=9 if d == 3 else c1sq,
        chi_h=chi_h,
        ample_K=d >= 5,
        minimal=minimal,
        blowup_count=0 if minimal else 6,
    )
    return InvariantRecord(
        chi=chi,
        tau=tau,
        b_plus=b_plus,
        b_minus=b_plus - tau,
        b1=0,
        spin=TriState.of(d % 2 == 0),
        simply_connected=TriState.YES,
        complex_data=data,
        psc=TriState.of(d <= 3),
        scalar_flat=TriState.of(d == 4),
    )


def cover_invariants(p: int, d: int) -> InvariantRecord:
    """p-fold cyclic cover of CP^2 branched over a smooth degree-d curve.

    With g = (d-1)(d-2)/2 the branch curve's genus, e(B) = 2 - 2g, and
    m = d(p-1)/p - 3 the multiplier of the pulled-back hyperplane class in
    the canonical bundle:

        chi  = 3p - (p-1) * e(B)
        c1^2 = p * m^2
        tau  = (c1^2 - 2*chi) / 3
        chi_h = (c1^2 + chi) / 12

    Spin: yes when m is even; no when m is odd and 4 does not divide p
    (the pulled-back hyperplane class has square p, so it is not
    2-divisible); unknown when m is odd and 4 | p.  K is ample iff
    m >= 1 (generic branch curve assumed), trivial iff m = 0, and
    anti-ample iff m <= -1, which settles the psc / scalar_flat flags.
    """
    if p < 2 or d < 1 or d % p != 0:
        raise DomainError(f"cyclic cover requires p >= 2 and p | d (got p={p}, d={d})")
    g = (d - 1) * (d - 2) // 2
    euler_branch = 2 - 2 * g
    m = d * (p - 1) // p - 3
    chi = 3 * p - (p - 1) * euler_branch
    c1sq = p * m * m
    if (c1sq - 2 * chi) % 3 != 0:
        raise ConsistencyError(f"cover ({p},{d}): signature not an integer")
    tau = (c1sq - 2 * chi) // 3
    if (c1sq + chi) % 12 != 0:
        raise ConsistencyError(f"cover ({p},{d}): chi_h not an integer")
    chi_h = (c1sq + chi) // 12
    b_plus = 2 * chi_h - 1
    if b_plus < 0 or b_plus - tau < 0:
        raise ConsistencyError(f"cover ({p},{d}): negative Betti data")
    if m % 2 == 0:
        spin = TriState.YES
    elif p % 4 != 0:
        spin = TriState.NO
    else:
        spin = TriState.UNKNOWN
    data = ComplexData(
        c1sq=c1sq,
        c1sq_minimal_model=c1sq,
        chi_h=chi_h,
        ample_K=m >= 1,
        minimal=True,
        blowup_count=0,
    )
    return InvariantRecord(
        chi=chi,
        tau=tau,
        b_plus=b_plus,
        b_minus=b_plus - tau,
        b1=0,
        spin=spin,
        simply_connected=TriState.YES,
        complex_data=data,
        psc=TriState.of(m <= -1),
        scalar_flat=TriState.of(m == 0),
    )


def _surface_invariants(spec: SurfaceSpec) -> InvariantRecord:
    chi = 12 * spec.chi_h - spec.c1sq
    tau = (spec.c1sq - 2 * chi) // 3
    b_plus = 2 * spec.chi_h - 1
    if spec.ample_K:
        psc = TriState.NO  # general type admits no s > 0 metric
        scalar_flat = TriState.NO
    elif spec.chi_h >= 2:
        psc = TriState.NO  # not rational, q = 0, hence Kodaira dimension >= 0
        scalar_flat = TriState.UNKNOWN
    else:
        psc = TriState.UNKNOWN
        scalar_flat = TriState.UNKNOWN
    data = None
    if spec.minimal:
        data = ComplexData(
            c1sq=spec.c1sq,
            c1sq_minimal_model=spec.c1sq,
            chi_h=spec.chi_h,
            ample_K=spec.ample_K,
            minimal=True,
            blowup_count=0,
        )
    # Non-minimal described surfaces have an undetermined minimal model,
    # so no complex data is attached and alpha falls back to unknown.
    return InvariantRecord(
        chi=chi,
        tau=tau,
        b_plus=b_plus,
        b_minus=b_plus - tau,
        b1=0 if spec.simply_connected else None,
        spin=spec.spin,
        simply_connected=TriState.of(spec.simply_connected),
        complex_data=data,
        psc=psc,
        scalar_flat=scalar_flat,
    )


_S4_RECORD = InvariantRecord(
    chi=2, tau=0, b_plus=0, b_minus=0, b1=0,
    spin=TriState.YES, simply_connected=TriState.YES, complex_data=None,
    psc=TriState.YES, scalar_flat=TriState.NO,
)

_CP2_RECORD = InvariantRecord(
    chi=3, tau=1, b_plus=1, b_minus=0, b1=0,
    spin=TriState.NO, simply_connected=TriState.YES,
    complex_data=ComplexData(9, 9, 1, False, True, 0),
    psc=TriState.YES, scalar_flat=TriState.NO,
)

_S2XS2_RECORD = InvariantRecord(
    chi=4, tau=0, b_plus=1, b_minus=1, b1=0,
    spin=TriState.YES, simply_connected=TriState.YES,
    complex_data=ComplexData(8, 8, 1, False, True, 0),
    psc=TriState.YES, scalar_flat=TriState.NO,
)

# The flat metric settles scalar_flat; positive scalar curvature is
# excluded on the torus.  b1 = 4 and the free abelian fundamental group.
_T4_RECORD = InvariantRecord(
    chi=0, tau=0, b_plus=3, b_minus=3, b1=4,
    spin=TriState.YES, simply_connected=TriState.NO, complex_data=None,
    psc=TriState.NO, scalar_flat=TriState.YES,
)


def _atom_record(a: Atom) -> InvariantRecord:
    kind = a.kind
    if kind is AtomKind.S4:
        return _S4_RECORD
    if kind is AtomKind.CP2:
        return _CP2_RECORD
    if kind is AtomKind.CP2REV:
        return _swap_orientation(_CP2_RECORD)
    if kind is AtomKind.S2XS2:
        return _S2XS2_RECORD
    if kind is AtomKind.T4:
        base = _T4_RECORD
    elif kind is AtomKind.HYPERSURFACE:
        base = hypersurface_invariants(a.degree)
    elif kind is AtomKind.CYCLIC_COVER:
        base = cover_invariants(a.cover_p, a.cover_d)
    elif kind is AtomKind.SURFACE:
        base = _surface_invariants(a.surface)
    else:  # pragma: no cover - the kinds above are exhaustive
        raise ConsistencyError(f"no invariant rule for atom kind {kind}")
    return _swap_orientation(base) if a.reversed else base


def _sum_complex_data(parts: tuple[Atom, ...]) -> ComplexData | None:
    blowups = sum(1 for a in parts if a.kind is AtomKind.CP2REV)
    rest = [a for a in parts if a.kind is not AtomKind.CP2REV]
    if len(rest) != 1 or rest[0].reversed:
        return None
    base = _atom_record(rest[0]).complex_data
    if base is None:
        return None
    return ComplexData(
        c1sq=base.c1sq - blowups,
        c1sq_minimal_model=base.c1sq_minimal_model,
        chi_h=base.chi_h,
        ample_K=base.ample_K and blowups == 0,
        minimal=base.minimal and blowups == 0,
        blowup_count=base.blowup_count + blowups,
    )


def invariants(e: ManifoldExpr) -> InvariantRecord:
    """Exact invariant record of an expression (canonicalized first)."""
    n = normalize(e)
    if isinstance(n, Atom):
        return _atom_record(n)
    assert isinstance(n, ConnectedSum)
    recs = [_atom_record(a) for a in n.parts]
    k = len(recs)
    spin = tri_all(r.spin for r in recs)
    sc = tri_all(r.simply_connected for r in recs)
    psc = TriState.YES if all(r.psc is TriState.YES for r in recs) else TriState.UNKNOWN
    return InvariantRecord(
        chi=sum(r.chi for r in recs) - 2 * (k - 1),
        tau=sum(r.tau for r in recs),
        b_plus=sum(r.b_plus for r in recs),
        b_minus=sum(r.b_minus for r in recs),
        b1=0 if sc is TriState.YES else None,
        spin=spin,
        simply_connected=sc,
        complex_data=_sum_complex_data(n.parts),
        psc=psc,
        scalar_flat=TriState.UNKNOWN,
    )


def noether_check(r: InvariantRecord) -> bool:
    """Consistency gate for simply connected complex-surface records.

    True iff 12*chi_h = c1^2 + chi and b+ = 2*chi_h - 1.
    """
    if r.complex_data is None:
        raise PreconditionViolation("record carries no complex-surface data")
    c = r.complex_data
    return 12 * c.chi_h == c.c1sq + r.chi and r.b_plus == 2 * c.chi_h - 1
