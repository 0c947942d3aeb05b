"""The squared monopole-class invariant alpha^2 and its curvature bounds.

alpha(M) is the inf over positive-definite b+-planes H of the max over
nonzero monopole classes a of sqrt(Q(a+, a+)), where a+ is the
Q-orthogonal projection of a into H.  Only alpha^2 is ever stored, so
every exact value is a rational number.

Catalog evaluation applies a fixed rule chain; the first rule that fires
wins and is recorded in the trace:

    R0  b+ < 2: alpha is undefined.
    R1  complex-surface expression (not the Ricci-flat case): alpha^2
        equals c1^2 of the minimal model.
    R2  connected sum of exactly three minimal simply connected complex
        atoms with b+ = 3 (mod 4): alpha^2 is the sum of their c1^2.
    R3  positive scalar curvature: no nonzero monopole classes, alpha = 0.
    R4  a scalar-flat metric squeezes the L^2 bound on s to zero, so
        alpha = 0 (this is the route taken by K3, T4 and their kin).
    R5  otherwise unknown.

Blow-ups of R2 sums are not covered by any rule and return unknown.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .algebra import Atom, ConnectedSum, ManifoldExpr, TriState, normalize
from .errors import BoundUnavailable, ConsistencyError
from .invariants import invariants, _atom_record
from . import dsl


class AlphaStatus(Enum):
    EXACT = "Exact"
    LOWER_BOUND = "LowerBound"
    UNKNOWN = "Unknown"
    UNDEFINED = "Undefined"


@dataclass(frozen=True)
class AlphaValue:
    status: AlphaStatus
    value: Fraction | None
    trace: tuple[str, ...]

    def __post_init__(self):
        if self.status in (AlphaStatus.EXACT, AlphaStatus.LOWER_BOUND):
            if self.value is None or self.value < 0:
                raise ConsistencyError("exact/lower-bound alpha^2 must be >= 0")
        elif self.value is not None:
            raise ConsistencyError(f"{self.status.value} alpha^2 carries no value")

    @property
    def known(self) -> bool:
        return self.status in (AlphaStatus.EXACT, AlphaStatus.LOWER_BOUND)


def _exact(q, *trace: str) -> AlphaValue:
    return AlphaValue(AlphaStatus.EXACT, Fraction(q), tuple(trace))


def _triple_sum(n: ConnectedSum) -> int | None:
    """Total c1^2 when n is a sum of three R2-eligible atoms, else None."""
    if len(n.parts) != 3:
        return None
    total = 0
    for a in n.parts:
        rec = _atom_record(a)
        c = rec.complex_data
        if (
            c is None
            or not c.minimal
            or rec.simply_connected is not TriState.YES
            or rec.b_plus % 4 != 3
        ):
            return None
        total += c.c1sq
    return total


def alpha_squared(e: ManifoldExpr) -> AlphaValue:
    n = normalize(e)
    r = invariants(n)
    if r.b_plus < 2:
        return AlphaValue(
            AlphaStatus.UNDEFINED, None,
            (f"R0: b+ = {r.b_plus} < 2, alpha is undefined",),
        )
    if r.complex_data is not None and r.scalar_flat is not TriState.YES:
        c = r.complex_data
        return _exact(
            c.c1sq_minimal_model,
            f"R1: complex-surface expression with b+ = {r.b_plus} > 1",
            f"alpha^2 = c1^2(minimal model) = {c.c1sq_minimal_model}",
        )
    if isinstance(n, ConnectedSum):
        total = _triple_sum(n)
        if total is not None:
            return _exact(
                total,
                "R2: sum of three minimal simply connected complex atoms "
                "with b+ = 3 (mod 4)",
                f"alpha^2 = sum of c1^2 = {total}",
            )
    if r.psc is TriState.YES:
        return _exact(
            0,
            "R3: admits positive scalar curvature, so the monopole-class "
            "set is empty and alpha = 0",
        )
    if r.scalar_flat is TriState.YES:
        return _exact(
            0,
            "R4: a scalar-flat metric forces 0 >= 32*pi^2*alpha^2, "
            "so alpha = 0",
        )
    return AlphaValue(AlphaStatus.UNKNOWN, None, ("R5: no catalog rule applies",))


def scalar_l2_lower_bound(e: ManifoldExpr) -> Fraction:
    """Coefficient c in: every metric satisfies integral of s^2 >= c * pi^2.

    c = 32 * alpha^2(M); the bound is vacuous when alpha = 0.
    """
    a = alpha_squared(e)
    if not a.known:
        raise BoundUnavailable(
            f"alpha^2({dsl.format_expr(e)}) is {a.status.value}; no bound available"
        )
    return 32 * a.value


@dataclass(frozen=True)
class MixedBounds:
    """Constants of the two mixed scalar/Weyl bounds.

    linear_sq: every metric satisfies ||s|| + sqrt(6)*||W+|| >= c1 with
    c1^2 = linear_sq * pi^2 (the square keeps the constant rational;
    c1 itself is 6*sqrt(2)*pi*alpha).

    quadratic: every metric satisfies
    (1/4pi^2) * integral of (s^2/24 + 2|W+|^2) >= quadratic,
    with quadratic = (2/3) * alpha^2.
    """

    linear_sq: Fraction
    quadratic: Fraction


def mixed_bound_constants(e: ManifoldExpr) -> MixedBounds:
    a = alpha_squared(e)
    if not a.known:
        raise BoundUnavailable(
            f"alpha^2({dsl.format_expr(e)}) is {a.status.value}; no bound available"
        )
    return MixedBounds(linear_sq=72 * a.value, quadratic=Fraction(2, 3) * a.value)
