"""Einstein-metric verdicts, homeomorphism classification, and form screening.

A verdict runs three layers against an expression and reports every check
with its instantiated numbers as a certificate:

  * the two topological inequalities 2*chi +/- 3*tau >= 0, with their
    rigid equality cases (flat or Ricci-flat-covered geometries only);
  * the monopole-class refinements 2*chi - 3*tau >= (1/3) alpha^2 and
    2*chi + 3*tau >= (2/3) alpha^2, the latter with equality only when
    both sides vanish and the manifold is K3 or the 4-torus;
  * the existence catalog (Kaehler-Einstein theorems for definite
    canonical bundles, the k-point blow-ups of the plane for 3 <= k <= 8,
    the rotating metric at k = 1, and the flat / Ricci-flat models),
    consulted for both orientations since a metric ignores orientation.

Existence and obstruction firing together is a hard internal error; the
catalogs are built so that it cannot happen for constructible input.
Certificate lines start with stable tags (HT+, HT-, SW+, SW-, AY, YAU,
TIAN, PAGE, HK, FLAT) so tests can match on them.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from . import dsl
from .algebra import (
    Atom,
    AtomKind,
    ConnectedSum,
    ManifoldExpr,
    TriState,
    atoms,
    normalize,
    reverse,
)
from .alpha import AlphaStatus, AlphaValue, alpha_squared
from .errors import ConsistencyError, NotSimplyConnected, UnsupportedExpression
from .invariants import InvariantRecord, invariants

_K3 = Atom(AtomKind.HYPERSURFACE, (4,))
_K3_REV = Atom(AtomKind.HYPERSURFACE, (4,), reversed=True)


class CheckOutcome(Enum):
    PASS = "pass"
    FAIL_STRICT = "fail"
    EQUALITY_OK = "equality-ok"
    EQUALITY_OBSTRUCTED = "equality-obstructed"
    EQUALITY_UNDECIDED = "equality-undecided"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SideCheck:
    tag: str
    lhs: Fraction
    rhs: Fraction
    outcome: CheckOutcome
    note: str

    @property
    def obstructed(self) -> bool:
        return self.outcome in (CheckOutcome.FAIL_STRICT, CheckOutcome.EQUALITY_OBSTRUCTED)

    @property
    def holds(self) -> bool:
        return self.outcome not in (CheckOutcome.FAIL_STRICT, CheckOutcome.INCONCLUSIVE)

    @property
    def equality(self) -> bool:
        return self.outcome in (
            CheckOutcome.EQUALITY_OK,
            CheckOutcome.EQUALITY_OBSTRUCTED,
            CheckOutcome.EQUALITY_UNDECIDED,
        )


def _k3_excluded(r: InvariantRecord) -> bool:
    """Invariants alone rule out a diffeomorphism with K3."""
    return (
        r.simply_connected is TriState.NO
        or r.spin is TriState.NO
        or (r.chi, r.tau) != (24, -16)
    )


def _k3_rev_excluded(r: InvariantRecord) -> bool:
    return (
        r.simply_connected is TriState.NO
        or r.spin is TriState.NO
        or (r.chi, r.tau) != (24, 16)
    )


def _t4_excluded(r: InvariantRecord) -> bool:
    return (
        r.simply_connected is TriState.YES
        or r.spin is TriState.NO
        or (r.chi, r.tau) != (0, 0)
        or (r.b1 is not None and r.b1 != 4)
    )


def _ht_side(tag: str, value: int, r: InvariantRecord, k3_data_excluded: bool) -> SideCheck:
    lhs = Fraction(value)
    if value > 0:
        return SideCheck(tag, lhs, Fraction(0), CheckOutcome.PASS,
                         f"{tag}: 2chi{tag[2]}3tau = {value} > 0: pass")
    if value < 0:
        return SideCheck(tag, lhs, Fraction(0), CheckOutcome.FAIL_STRICT,
                         f"{tag}: 2chi{tag[2]}3tau = {value} < 0: obstructed")
    # Equality: an Einstein metric would force a finite cover by a flat
    # torus or by the (suitably oriented) Ricci-flat K3.
    if r.simply_connected is not TriState.YES:
        return SideCheck(
            tag, lhs, Fraction(0), CheckOutcome.EQUALITY_OK,
            f"{tag}: 2chi{tag[2]}3tau = 0: equality; a flat-torus or "
            "Ricci-flat cover is not excluded: pass",
        )
    if k3_data_excluded:
        return SideCheck(
            tag, lhs, Fraction(0), CheckOutcome.EQUALITY_OBSTRUCTED,
            f"{tag}: 2chi{tag[2]}3tau = 0: equality; simply connected and "
            "not of K3 type (a simply connected flat-torus cover is "
            "impossible): obstructed",
        )
    return SideCheck(
        tag, lhs, Fraction(0), CheckOutcome.EQUALITY_UNDECIDED,
        f"{tag}: 2chi{tag[2]}3tau = 0: equality; invariants match K3, "
        "smooth identification undecided: pass",
    )


@dataclass(frozen=True)
class HitchinThorpeReport:
    plus: SideCheck
    minus: SideCheck

    @property
    def plus_ok(self) -> bool:
        return self.plus.holds

    @property
    def minus_ok(self) -> bool:
        return self.minus.holds

    @property
    def plus_equality(self) -> bool:
        return self.plus.equality

    @property
    def minus_equality(self) -> bool:
        return self.minus.equality

    @property
    def equality_diagnosis(self) -> str | None:
        notes = [s.note for s in (self.plus, self.minus) if s.equality]
        return "; ".join(notes) if notes else None

    @property
    def obstructed(self) -> bool:
        return self.plus.obstructed or self.minus.obstructed


def hitchin_thorpe(r: InvariantRecord) -> HitchinThorpeReport:
    """Evaluate both inequalities exactly and diagnose the equality cases."""
    return HitchinThorpeReport(
        plus=_ht_side("HT+", r.two_chi_plus_3tau, r, _k3_excluded(r)),
        minus=_ht_side("HT-", r.two_chi_minus_3tau, r, _k3_rev_excluded(r)),
    )


@dataclass(frozen=True)
class SWReport:
    applicable: bool
    alpha_sq: Fraction | None
    plus: SideCheck
    minus: SideCheck

    @property
    def obstructed(self) -> bool:
        return self.applicable and (self.plus.obstructed or self.minus.obstructed)


def _sw_inconclusive(status: AlphaStatus) -> SWReport:
    note = f"SW: inconclusive (alpha^2 is {status.value})"
    side = SideCheck("SW", Fraction(0), Fraction(0), CheckOutcome.INCONCLUSIVE, note)
    return SWReport(False, None, side, side)


def sw_einstein_obstruction(r: InvariantRecord, a: AlphaValue) -> SWReport:
    """Monopole-class strengthening of the topological inequalities.

    Both checks run in exact rational arithmetic.  The plus-side equality
    with alpha^2 > 0 is impossible for an Einstein metric; with both
    sides vanishing the manifold would have to be K3 or the 4-torus, so
    records whose invariants exclude both are obstructed.  The minus-side
    equality with alpha^2 > 0 forces a compact complex-hyperbolic
    quotient, which is aspherical, so it obstructs simply connected
    expressions only.
    """
    if not a.known:
        return _sw_inconclusive(a.status)
    alpha_sq = a.value

    plus_lhs = Fraction(r.two_chi_plus_3tau)
    plus_rhs = Fraction(2, 3) * alpha_sq
    if plus_lhs < plus_rhs:
        plus = SideCheck(
            "SW+", plus_lhs, plus_rhs, CheckOutcome.FAIL_STRICT,
            f"SW+: 2chi+3tau = {plus_lhs} < (2/3)*alpha^2 = {plus_rhs}: obstructed",
        )
    elif plus_lhs > plus_rhs:
        plus = SideCheck(
            "SW+", plus_lhs, plus_rhs, CheckOutcome.PASS,
            f"SW+: 2chi+3tau = {plus_lhs} >= (2/3)*alpha^2 = {plus_rhs}: pass",
        )
    elif alpha_sq > 0:
        plus = SideCheck(
            "SW+", plus_lhs, plus_rhs, CheckOutcome.EQUALITY_OBSTRUCTED,
            f"SW+: 2chi+3tau = {plus_lhs} = (2/3)*alpha^2 with alpha^2 = "
            f"{alpha_sq} > 0; equality requires both sides to vanish, so M "
            "is not diffeomorphic to K3 or T4: obstructed",
        )
    elif _k3_excluded(r) and _t4_excluded(r):
        plus = SideCheck(
            "SW+", plus_lhs, plus_rhs, CheckOutcome.EQUALITY_OBSTRUCTED,
            "SW+: 2chi+3tau = 0 = (2/3)*alpha^2; equality forces K3 or T4, "
            "both excluded by the invariants: obstructed",
        )
    else:
        plus = SideCheck(
            "SW+", plus_lhs, plus_rhs, CheckOutcome.EQUALITY_UNDECIDED,
            "SW+: 2chi+3tau = 0 = (2/3)*alpha^2; equality permitted for K3 "
            "or T4 types: pass",
        )

    minus_lhs = Fraction(r.two_chi_minus_3tau)
    minus_rhs = Fraction(1, 3) * alpha_sq
    if minus_lhs < minus_rhs:
        minus = SideCheck(
            "SW-", minus_lhs, minus_rhs, CheckOutcome.FAIL_STRICT,
            f"SW-: 2chi-3tau = {minus_lhs} < (1/3)*alpha^2 = {minus_rhs}: obstructed",
        )
    elif minus_lhs > minus_rhs:
        minus = SideCheck(
            "SW-", minus_lhs, minus_rhs, CheckOutcome.PASS,
            f"SW-: 2chi-3tau = {minus_lhs} >= (1/3)*alpha^2 = {minus_rhs}: pass",
        )
    elif alpha_sq > 0:
        if r.simply_connected is TriState.YES:
            minus = SideCheck(
                "SW-", minus_lhs, minus_rhs, CheckOutcome.EQUALITY_OBSTRUCTED,
                f"SW-: 2chi-3tau = {minus_lhs} = (1/3)*alpha^2 > 0; equality "
                "forces a complex-hyperbolic quotient, which is never simply "
                "connected: obstructed",
            )
        else:
            minus = SideCheck(
                "SW-", minus_lhs, minus_rhs, CheckOutcome.EQUALITY_UNDECIDED,
                f"SW-: 2chi-3tau = {minus_lhs} = (1/3)*alpha^2 > 0; equality "
                "case (complex-hyperbolic quotient) undecided: pass",
            )
    else:
        minus = SideCheck(
            "SW-", minus_lhs, minus_rhs, CheckOutcome.EQUALITY_OK,
            "SW-: 2chi-3tau = 0 with alpha = 0; no conclusion beyond HT-: pass",
        )
    return SWReport(True, alpha_sq, plus, minus)


@dataclass(frozen=True)
class ExistenceReport:
    exists: bool
    tag: str | None
    reason: str | None

    @property
    def note(self) -> str:
        if self.exists:
            return f"{self.tag}: {self.reason}: exists"
        return "existence catalog: no entry applies"


def _cover_multiplier(a: Atom) -> int:
    p, d = a.cover_p, a.cover_d
    return d * (p - 1) // p - 3


def _atom_existence(a: Atom) -> ExistenceReport | None:
    kind = a.kind
    if kind is AtomKind.T4:
        return ExistenceReport(True, "FLAT", "flat metric on the 4-torus")
    if kind is AtomKind.HYPERSURFACE and a.degree == 4:
        return ExistenceReport(True, "HK", "hyper-Kaehler (Ricci-flat Kaehler) metric on K3")
    if kind in (AtomKind.CP2, AtomKind.CP2REV, AtomKind.S2XS2):
        return ExistenceReport(
            True, "TIAN",
            "positive Kaehler-Einstein metric (anti-canonical bundle ample)",
        )
    ample = (
        (kind is AtomKind.HYPERSURFACE and a.degree >= 5)
        or (kind is AtomKind.CYCLIC_COVER and _cover_multiplier(a) >= 1)
        or (kind is AtomKind.SURFACE and a.surface.ample_K)
    )
    if ample:
        return ExistenceReport(
            True, "AY", "negative Kaehler-Einstein metric (canonical bundle ample)"
        )
    if kind is AtomKind.CYCLIC_COVER and _cover_multiplier(a) == 0:
        return ExistenceReport(
            True, "YAU", "Ricci-flat Kaehler metric (trivial canonical bundle)"
        )
    return None


def _catalog_existence(n: ManifoldExpr) -> ExistenceReport | None:
    if isinstance(n, Atom):
        return _atom_existence(n)
    counts = atoms(n)
    kinds = {a.kind for a in counts}
    if kinds == {AtomKind.CP2, AtomKind.CP2REV}:
        cp2 = counts[Atom(AtomKind.CP2)]
        k = counts[Atom(AtomKind.CP2REV)]
        if cp2 == 1 and k == 1:
            return ExistenceReport(
                True, "PAGE",
                "the rotating Einstein metric on the one-point blow-up of the plane",
            )
        if cp2 == 1 and 3 <= k <= 8:
            return ExistenceReport(
                True, "TIAN",
                f"positive Kaehler-Einstein metric on the {k}-point blow-up "
                "of the plane (3 <= k <= 8)",
            )
    return None


def einstein_existence(e: ManifoldExpr) -> ExistenceReport:
    """Catalog lookup, orientation-invariant: a metric that is Einstein for
    one orientation is Einstein for both."""
    n = normalize(e)
    hit = _catalog_existence(n) or _catalog_existence(reverse(n))
    return hit if hit is not None else ExistenceReport(False, None, None)


@dataclass(frozen=True)
class SmoothableReport:
    donaldson_excluded: bool
    rokhlin_violation: bool


def smoothable_form(b_plus: int, b_minus: int, parity: str) -> SmoothableReport:
    """Screen a candidate (b+, b-, parity) for smooth realizability.

    Definite even forms of positive rank cannot arise smoothly, and even
    forms need signature divisible by 16.
    """
    if b_plus < 0 or b_minus < 0:
        raise ValueError("b+ and b- must be >= 0")
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    even = parity == "even"
    return SmoothableReport(
        donaldson_excluded=even and (b_plus == 0 or b_minus == 0) and b_plus + b_minus > 0,
        rokhlin_violation=even and (b_plus - b_minus) % 16 != 0,
    )


@dataclass(frozen=True)
class HomeoType:
    chi: int
    tau: int
    parity: str
    canonical: str | None
    eleven_eighths_regime: bool
    rokhlin_violation: bool
    donaldson_excluded: bool


def freedman_class(r: InvariantRecord) -> HomeoType:
    """Homeomorphism type of a simply connected record.

    Non-spin types are represented by b+ copies of CP2 plus b- copies of
    CP2~.  Spin types with signature divisible by 16 and enough Euler
    characteristic are represented by copies of K3 (reversed for positive
    signature) and S2xS2; spin types inside the 11/8 regime have no
    catalog representative.  Representatives are rendered in canonical
    atom order.
    """
    if r.simply_connected is not TriState.YES:
        raise NotSimplyConnected("homeomorphism classification needs a simply connected record")
    if r.spin is TriState.UNKNOWN:
        raise UnsupportedExpression("parity undetermined (spin status unknown)")
    parity = "even" if r.spin is TriState.YES else "odd"
    flags = smoothable_form(r.b_plus, r.b_minus, parity)
    eleven = parity == "even" and 8 * r.chi < 11 * abs(r.tau) + 16
    canonical = None
    if parity == "odd":
        pieces = (Atom(AtomKind.CP2),) * r.b_plus + (Atom(AtomKind.CP2REV),) * r.b_minus
        canonical = dsl.format_expr(ConnectedSum(pieces)) if pieces else None
    elif not flags.rokhlin_violation:
        m = abs(r.tau) // 16
        leftover = r.chi - 2 - 22 * m
        if leftover >= 0 and leftover % 2 == 0:
            n = leftover // 2
            k3 = _K3 if r.tau <= 0 else _K3_REV
            pieces = (k3,) * m + (Atom(AtomKind.S2XS2),) * n
            canonical = dsl.format_expr(ConnectedSum(pieces)) if pieces else "S4"
    return HomeoType(
        chi=r.chi,
        tau=r.tau,
        parity=parity,
        canonical=canonical,
        eleven_eighths_regime=eleven,
        rokhlin_violation=flags.rokhlin_violation,
        donaldson_excluded=flags.donaldson_excluded,
    )


def homeomorphic(e1: ManifoldExpr, e2: ManifoldExpr) -> TriState:
    """Compare homeomorphism types: yes iff both simply connected with the
    same (chi, tau, parity); identical canonical forms short-circuit."""
    n1, n2 = normalize(e1), normalize(e2)
    if n1 == n2:
        return TriState.YES
    r1, r2 = invariants(n1), invariants(n2)
    if r1.simply_connected is not TriState.YES or r2.simply_connected is not TriState.YES:
        return TriState.UNKNOWN
    if (r1.chi, r1.tau) != (r2.chi, r2.tau):
        return TriState.NO
    if r1.spin is TriState.UNKNOWN or r2.spin is TriState.UNKNOWN:
        return TriState.UNKNOWN
    return TriState.of(r1.spin == r2.spin)


class Conclusion(Enum):
    OBSTRUCTED = "Obstructed"
    EXISTS = "Exists"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict:
    expression: ManifoldExpr
    conclusion: Conclusion
    reason: str | None
    certificate: tuple[str, ...]
    record: InvariantRecord
    alpha: AlphaValue

    @property
    def conclusion_text(self) -> str:
        if self.reason:
            return f"{self.conclusion.value}({self.reason})"
        return self.conclusion.value


def _structural_k3_t4_note(n: ManifoldExpr) -> str | None:
    if n == _K3 or n == _K3_REV:
        return "structural identification: the expression is K3 itself"
    if isinstance(n, Atom) and n.kind is AtomKind.T4:
        return "structural identification: the expression is the 4-torus"
    return None


def verdict(e: ManifoldExpr) -> Verdict:
    """Run every check and certify the conclusion.

    Obstruction priority for the reported reason: strict topological
    failures, then their equality clauses, then strict monopole-class
    failures, then the monopole-class equality clauses.  Existence and
    obstruction firing together raises ConsistencyError.
    """
    n = normalize(e)
    r = invariants(n)
    a = alpha_squared(n)
    ht = hitchin_thorpe(r)
    sw = sw_einstein_obstruction(r, a)
    ex = einstein_existence(n)

    lines = [ht.plus.note, ht.minus.note]
    if sw.applicable:
        lines += [sw.plus.note, sw.minus.note]
    else:
        lines.append(sw.plus.note)
    structural = _structural_k3_t4_note(n)
    if structural and (ht.plus.equality or ht.minus.equality):
        lines.append(structural)
    lines.append(ex.note)

    reason = None
    ordered = [
        (ht.plus, "HT+", "HT+ equality"),
        (ht.minus, "HT-", "HT- equality"),
        (sw.plus, "SW+", "SW+ equality"),
        (sw.minus, "SW-", "SW- equality"),
    ]
    for side, strict_tag, equality_tag in ordered:
        if side.outcome is CheckOutcome.FAIL_STRICT:
            reason = strict_tag
            break
    if reason is None:
        for side, strict_tag, equality_tag in ordered:
            if side.outcome is CheckOutcome.EQUALITY_OBSTRUCTED:
                reason = equality_tag
                break

    if ex.exists and reason is not None:
        raise ConsistencyError(
            f"existence ({ex.tag}) and obstruction ({reason}) both fired for "
            f"{dsl.format_expr(n)}; this is a bug"
        )
    if ex.exists:
        return Verdict(n, Conclusion.EXISTS, ex.tag, tuple(lines), r, a)
    if reason is not None:
        return Verdict(n, Conclusion.OBSTRUCTED, reason, tuple(lines), r, a)
    return Verdict(n, Conclusion.UNKNOWN, None, tuple(lines), r, a)


def verdict_json(v: Verdict) -> dict:
    """The documented JSON shape of a verdict."""
    return {
        "expr": dsl.format_expr(v.expression),
        "chi": v.record.chi,
        "tau": v.record.tau,
        "b_plus": v.record.b_plus,
        "b_minus": v.record.b_minus,
        "spin": v.record.spin.value,
        "alpha_sq": {
            "status": v.alpha.status.value,
            "value": str(v.alpha.value) if v.alpha.value is not None else None,
        },
        "conclusion": v.conclusion_text,
        "certificate": list(v.certificate),
    }
