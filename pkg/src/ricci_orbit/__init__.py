"""Exact Kahler-Ricci iteration of radial metrics on CP^1.

Library layout:
  polyalg      exact polynomials and reduced rational functions over Q
  sturm        Sturm chains, root counting, positivity certificates
  geometry     radial densities, the Ricci operator, orbit iteration
  inducedness  projective-inducedness decisions and Bochner rescaling
  volumes      symplectic / Bochner-Euclidean volumes, Chern cross-check
  sweep        symbolic iteration in the family parameter with certified
               positivity intervals
  cli          the ricci-orbit command-line tool
"""

from .polyalg import Poly, RatFunc, as_fraction, format_fraction, ratfunc_reduce
from .sturm import (
    IsolatingInterval,
    Positivity,
    PositivityReport,
    SturmChain,
    eval_mod_quadratic,
    is_positive_on_nonneg_axis,
    isolate_positive_roots,
    sign_at_sqrt,
    sturm_count_roots,
)
from .geometry import (
    IterationOrbit,
    KahlerStatus,
    KahlerVerdict,
    NonPositiveAtOriginError,
    NotAMetricError,
    RadialDensity,
    RadialLogPotential,
    RicciFlat,
    check_kahler_cp1,
    d_op,
    hessian_density,
    is_einstein,
    iterate,
    ricci,
)
from .inducedness import (
    BochnerScale,
    EmbeddingData,
    InducednessVerdict,
    binomial_test,
    bochner_scale,
    is_projectively_induced_radial,
    ricci_potential,
)
from .volumes import (
    EuclideanVolumeReport,
    VolumeReport,
    chern_check,
    euclidean_volume,
    symplectic_volume,
)
from .sweep import (
    BivarPoly,
    CertifiedInterval,
    FAMILY_A,
    FAMILY_P,
    SizeLimitError,
    SweepResult,
    SymbolicStep,
    coeff_positivity_interval,
    kahler_interval,
    symbolic_iterate,
    sqrt2_boundary_values,
    tracked_numerators,
)

__version__ = "0.1.0"

__all__ = [
    "Poly",
    "RatFunc",
    "as_fraction",
    "format_fraction",
    "ratfunc_reduce",
    "IsolatingInterval",
    "Positivity",
    "PositivityReport",
    "SturmChain",
    "eval_mod_quadratic",
    "is_positive_on_nonneg_axis",
    "isolate_positive_roots",
    "sign_at_sqrt",
    "sturm_count_roots",
    "IterationOrbit",
    "KahlerStatus",
    "KahlerVerdict",
    "NonPositiveAtOriginError",
    "NotAMetricError",
    "RadialDensity",
    "RadialLogPotential",
    "RicciFlat",
    "check_kahler_cp1",
    "d_op",
    "hessian_density",
    "is_einstein",
    "iterate",
    "ricci",
    "BochnerScale",
    "EmbeddingData",
    "InducednessVerdict",
    "binomial_test",
    "bochner_scale",
    "is_projectively_induced_radial",
    "ricci_potential",
    "EuclideanVolumeReport",
    "VolumeReport",
    "chern_check",
    "euclidean_volume",
    "symplectic_volume",
    "BivarPoly",
    "CertifiedInterval",
    "FAMILY_A",
    "FAMILY_P",
    "SizeLimitError",
    "SweepResult",
    "SymbolicStep",
    "coeff_positivity_interval",
    "kahler_interval",
    "symbolic_iterate",
    "sqrt2_boundary_values",
    "tracked_numerators",
]
