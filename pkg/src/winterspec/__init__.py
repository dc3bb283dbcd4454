"""Momentum spectrum of a particle in a box split by a delta-shell barrier.

The box [0, (N+1)pi] is divided at x = pi into cavities of length pi and
N*pi by a barrier of strength g.  This package computes the momentum
levels k(g) exactly (guarded root isolation), perturbatively (closed-form
coefficients through fifth order), and by arctangent resummations that
stay accurate at strong coupling, plus the amplitude/phase observables
used to cross-validate all three routes against each other.
"""

from .analysis import (
    PoleProximityError,
    ResonanceDiagnostics,
    amplitude_ratio,
    half_line_ranges,
    local_maximum,
    phase_shift,
    plus_minus_levels,
    resonance_diagnostics,
    resummed_large_n,
    unwrap_phase,
)
from .cardano import CubicRoots, QuarticRoots, depress_cubic, solve_cubic, solve_quartic
from .core import (
    CouplingSet,
    Kind,
    LevelCurve,
    LevelIndex,
    NumericalError,
    cavity_length,
    classify_free_momentum,
    critical_coupling,
    energy,
    exceptional_level,
    exceptional_levels,
    level_range,
    method_label,
    midpoint_coupling,
)
from .jets import Jet, jet_arctan, jet_cbrt, jet_compose, jet_sqrt
from .perturbation import (
    MAX_ORDER,
    PerturbativeCoefficients,
    coefficients,
    nonresonant_coeffs,
    perturbative_momentum,
    resonant_coeffs,
)
from .resummation import (
    BRANCH_TABLE,
    Branch,
    BranchFunction,
    SchemeResult,
    branch_H,
    branch_argument,
    branch_for_level,
    fixed_point_momentum,
    phi_functions,
    recursive_momentum,
    series_momentum,
)
from .spectrum_exact import (
    SpectralPoleError,
    SpectralWindow,
    dk_dz,
    eigenfunction,
    exact_level,
    exact_levels,
    h_function,
    spectral_window,
)
from .trig_reduce import TangentPoleError, build_reduction, s_function, tan_multiple

__version__ = "0.1.0"

__all__ = [
    "BRANCH_TABLE",
    "Branch",
    "BranchFunction",
    "CouplingSet",
    "CubicRoots",
    "Jet",
    "Kind",
    "LevelCurve",
    "LevelIndex",
    "MAX_ORDER",
    "NumericalError",
    "PerturbativeCoefficients",
    "PoleProximityError",
    "QuarticRoots",
    "ResonanceDiagnostics",
    "SchemeResult",
    "SpectralPoleError",
    "SpectralWindow",
    "TangentPoleError",
    "amplitude_ratio",
    "branch_H",
    "branch_argument",
    "branch_for_level",
    "build_reduction",
    "cavity_length",
    "classify_free_momentum",
    "coefficients",
    "critical_coupling",
    "depress_cubic",
    "dk_dz",
    "eigenfunction",
    "energy",
    "exact_level",
    "exact_levels",
    "exceptional_level",
    "exceptional_levels",
    "fixed_point_momentum",
    "h_function",
    "half_line_ranges",
    "jet_arctan",
    "jet_cbrt",
    "jet_compose",
    "jet_sqrt",
    "level_range",
    "local_maximum",
    "method_label",
    "midpoint_coupling",
    "nonresonant_coeffs",
    "perturbative_momentum",
    "phase_shift",
    "phi_functions",
    "plus_minus_levels",
    "recursive_momentum",
    "resonance_diagnostics",
    "resonant_coeffs",
    "resummed_large_n",
    "s_function",
    "series_momentum",
    "solve_cubic",
    "solve_quartic",
    "spectral_window",
    "tan_multiple",
    "unwrap_phase",
]
