"""fourfold: exact invariants and Einstein-metric verdicts for 4-manifolds."""

from .algebra import (
    Atom,
    AtomKind,
    ConnectedSum,
    CP2,
    CP2REV,
    K3,
    ManifoldExpr,
    Reverse,
    S2XS2,
    S4,
    SurfaceSpec,
    T4,
    TriState,
    atoms,
    blow_up,
    connected_sum,
    cyclic_cover,
    hypersurface,
    normalize,
    reverse,
    surface_atom,
)
from .alpha import (
    AlphaStatus,
    AlphaValue,
    MixedBounds,
    alpha_squared,
    mixed_bound_constants,
    scalar_l2_lower_bound,
)
from .curvature import (
    ModelGeometry,
    builtin_models,
    gauss_bonnet_check,
    kaehler_spectrum_check,
    saturation_check,
    weitzenboeck_parallel_check,
)
from .dsl import format_expr, parse
from .invariants import (
    ComplexData,
    InvariantRecord,
    cover_invariants,
    hypersurface_invariants,
    invariants,
    noether_check,
)
from .minimax import (
    GrassmannPoint,
    NumericResult,
    OracleResult,
    QuadraticFormSpace,
    alpha_brute_oracle,
    alpha_squared_numeric,
    projection_split,
)
from .obstructions import (
    Conclusion,
    ExistenceReport,
    HomeoType,
    Verdict,
    einstein_existence,
    freedman_class,
    hitchin_thorpe,
    homeomorphic,
    smoothable_form,
    sw_einstein_obstruction,
    verdict,
    verdict_json,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
