"""Closed-form curvature data for model metrics, checked in exact arithmetic.

Every entry stores the pointwise decomposition of the curvature operator:
scalar curvature s, the three eigenvalues of the self-dual Weyl operator
W+ on self-dual 2-forms (trace-free, so they sum to zero), |W-|^2, and
the squared trace-free Ricci norm |r0|^2 (zero exactly for Einstein
metrics).  Volumes are rational coefficients of pi^2; density-only
models (hyperbolic planes, the Ricci-flat K3 metric) omit the volume and
skip the integral checks rather than inventing quotient data.

Normalizations: unit round S4 (s = 12), CP2 scaled to s = 24, its mirror
with s = -24, unit product of round 2-spheres (s = 4), unit-volume flat
torus, unit-curvature H4 (s = -12).  Both sides of the quadratic
curvature integral scale the same way, so any normalization checks the
same identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError, MissingData, PreconditionViolation

Frac3 = tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class ModelGeometry:
    name: str
    s: Fraction
    wplus_spectrum: Frac3
    wminus_sq: Fraction | None  # None when unavailable
    ricci0_sq: Fraction
    volume: Fraction | None  # coefficient of pi^2; None for density-only models
    chi: int | None
    tau: int | None
    kaehler: bool
    einstein: bool

    def __post_init__(self):
        if sum(self.wplus_spectrum) != 0:
            raise ConsistencyError(f"{self.name}: W+ spectrum must be trace-free")
        if self.einstein and self.ricci0_sq != 0:
            raise ConsistencyError(f"{self.name}: Einstein metrics have r0 = 0")

    @property
    def wplus_sq(self) -> Fraction:
        return sum(x * x for x in self.wplus_spectrum)

    @property
    def lowest_wplus_eigenvalue(self) -> Fraction:
        return min(self.wplus_spectrum)


def _fr(x) -> Fraction:
    return Fraction(x)


def _kaehler_spectrum(s) -> Frac3:
    s = _fr(s)
    return (s / 6, -s / 12, -s / 12)


def builtin_models() -> tuple[ModelGeometry, ...]:
    zero3 = (_fr(0), _fr(0), _fr(0))
    return (
        ModelGeometry(
            name="S4 (round, unit radius)",
            s=_fr(12), wplus_spectrum=zero3, wminus_sq=_fr(0), ricci0_sq=_fr(0),
            volume=Fraction(8, 3), chi=2, tau=0, kaehler=False, einstein=True,
        ),
        ModelGeometry(
            name="T4 (flat, unit volume)",
            s=_fr(0), wplus_spectrum=zero3, wminus_sq=_fr(0), ricci0_sq=_fr(0),
            volume=_fr(1), chi=0, tau=0, kaehler=True, einstein=True,
        ),
        ModelGeometry(
            name="CP2 (Fubini-Study, s=24)",
            s=_fr(24), wplus_spectrum=_kaehler_spectrum(24), wminus_sq=_fr(0),
            ricci0_sq=_fr(0), volume=Fraction(1, 2), chi=3, tau=1,
            kaehler=True, einstein=True,
        ),
        ModelGeometry(
            name="CP2 reversed (W+ and W- swapped)",
            s=_fr(24), wplus_spectrum=zero3, wminus_sq=_fr(24), ricci0_sq=_fr(0),
            volume=Fraction(1, 2), chi=3, tau=-1, kaehler=False, einstein=True,
        ),
        ModelGeometry(
            name="S2xS2 (product of unit round spheres)",
            s=_fr(4), wplus_spectrum=_kaehler_spectrum(4),
            wminus_sq=Fraction(2, 3),  # factor swap mirrors W+ into W-
            ricci0_sq=_fr(0), volume=_fr(16), chi=4, tau=0,
            kaehler=True, einstein=True,
        ),
        ModelGeometry(
            name="K3 (Ricci-flat Kaehler, density only)",
            s=_fr(0), wplus_spectrum=zero3, wminus_sq=None, ricci0_sq=_fr(0),
            volume=None, chi=24, tau=-16, kaehler=True, einstein=True,
        ),
        ModelGeometry(
            name="CH2 (complex hyperbolic plane, s=-24, density only)",
            s=_fr(-24), wplus_spectrum=_kaehler_spectrum(-24), wminus_sq=_fr(0),
            ricci0_sq=_fr(0), volume=None, chi=None, tau=None,
            kaehler=True, einstein=True,
        ),
        ModelGeometry(
            name="H4 (real hyperbolic space, s=-12, density only)",
            s=_fr(-12), wplus_spectrum=zero3, wminus_sq=_fr(0), ricci0_sq=_fr(0),
            volume=None, chi=None, tau=None, kaehler=False, einstein=True,
        ),
    )


def gauss_bonnet_check(m: ModelGeometry) -> tuple[Fraction, Fraction]:
    """Exact residuals of the two quadratic curvature integrals.

    Checks (2*chi +/- 3*tau) against
    (1/4pi^2) * integral of (s^2/24 + 2|W+-|^2 - |r0|^2/2); both residuals
    are zero exactly when the catalog entry is consistent.
    """
    if m.volume is None or m.chi is None or m.tau is None:
        raise MissingData(f"{m.name}: integral check needs volume, chi and tau")
    if m.wminus_sq is None:
        raise MissingData(f"{m.name}: integral check needs |W-|^2")
    base = m.s * m.s / 24 - m.ricci0_sq / 2
    plus_density = base + 2 * m.wplus_sq
    minus_density = base + 2 * m.wminus_sq
    plus_res = (2 * m.chi + 3 * m.tau) - Fraction(1, 4) * plus_density * m.volume
    minus_res = (2 * m.chi - 3 * m.tau) - Fraction(1, 4) * minus_density * m.volume
    return plus_res, minus_res


def kaehler_spectrum_check(m: ModelGeometry) -> bool:
    """Kaehler 4-manifolds have W+ spectrum (s/6, -s/12, -s/12); then
    |W+|^2 = s^2/24, the squared form of |s| = 2*sqrt(6)*|W+|."""
    if not m.kaehler:
        raise PreconditionViolation(f"{m.name} is not a Kaehler model")
    return m.wplus_spectrum == _kaehler_spectrum(m.s) and m.wplus_sq == m.s * m.s / 24


def weitzenboeck_parallel_check(m: ModelGeometry) -> Fraction:
    """Residual of the self-dual form identity on the parallel Kaehler form.

    For a parallel form omega (|omega|^2 = 2, harmonic) the rough
    Laplacian term drops and the identity reduces to
    -2 W+(omega, omega) + (s/3)|omega|^2 = 0 with W+(omega, omega) given
    by the distinguished eigenvalue.  Returns the exact residual computed
    from the catalog spectrum; zero means verified.
    """
    if not (m.kaehler and m.einstein):
        raise PreconditionViolation(f"{m.name} is not a Kaehler-Einstein model")
    return -2 * m.wplus_spectrum[0] * 2 + (m.s / 3) * 2


def saturation_check(m: ModelGeometry) -> bool:
    """A Kaehler-Einstein metric with W- = 0 saturates the one-third bound
    pointwise: (1/4pi^2)(s^2/24) equals (1/3)(1/32pi^2) s^2."""
    if not (m.kaehler and m.einstein and m.wminus_sq == 0):
        raise PreconditionViolation(
            f"{m.name} must be Kaehler-Einstein with vanishing W-"
        )
    lhs = Fraction(1, 4) * (m.s * m.s / 24 + 2 * m.wminus_sq - m.ricci0_sq / 2)
    rhs = Fraction(1, 3) * (m.s * m.s / 32)
    return lhs == rhs


def run_model_checks() -> list[dict]:
    """One row per builtin model with every applicable check; used by the CLI."""
    rows = []
    for m in builtin_models():
        row: dict = {"name": m.name, "ok": True}
        try:
            plus_res, minus_res = gauss_bonnet_check(m)
            row["gb_plus"] = plus_res
            row["gb_minus"] = minus_res
            if plus_res != 0 or minus_res != 0:
                row["ok"] = False
        except MissingData:
            row["gb_plus"] = row["gb_minus"] = None
        if m.kaehler:
            spec_ok = kaehler_spectrum_check(m)
            row["kaehler_spectrum"] = spec_ok
            if not spec_ok:
                row["ok"] = False
        else:
            row["kaehler_spectrum"] = None
        if m.kaehler and m.einstein:
            res = weitzenboeck_parallel_check(m)
            row["weitzenboeck"] = res
            if res != 0:
                row["ok"] = False
        else:
            row["weitzenboeck"] = None
        if m.kaehler and m.einstein and m.wminus_sq == 0:
            sat = saturation_check(m)
            row["saturation"] = sat
            if not sat:
                row["ok"] = False
        else:
            row["saturation"] = None
        rows.append(row)
    return rows
