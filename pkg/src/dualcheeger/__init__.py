"""Dirichlet spectra and Cheeger / dual Cheeger constants of weighted graphs."""
from .asymptotics import (
    Estimate,
    ExhaustionReport,
    InfinityConstants,
    essential_band_from_model,
    essential_bounds_from_inf,
    exhaustion_limits,
    extrapolate,
    infinity_constants,
    spectrum_bounds_from_isoperimetry,
    trace_bound_check,
    volume_growth_check,
)
from .errors import CapExceeded, ConvergenceError, HorizonError, HypothesisError, InputError
from .families import FAMILIES, GraphFamily, make_family
from .graph import (
    OddGirth,
    PartitionPair,
    Region,
    SphereProfile,
    WeightedGraph,
    ball,
    bipartition,
    boundary,
    cut_measure,
    odd_girth,
    radial_split,
    sphere,
    sphere_profile,
    volume,
)
from .halfline import (
    HalfLineModel,
    clustering_C,
    comparison_bounds,
    finite_graph_bounds,
    halfline_model,
    kappa,
    solve_theta,
)
from .isoperimetry import (
    cheeger,
    cheeger_exact,
    dual_cheeger,
    dual_cheeger_exact,
    max_cut_bound,
    max_cut_exact,
    surgery_partition,
    verify_cheeger_pair,
)
from .spectral import DirichletOperator, SpectralResult, dirichlet_operator, dirichlet_spectrum, green_form, spectrum

__version__ = "0.1.0"

__all__ = [
    "Estimate",
    "ExhaustionReport",
    "InfinityConstants",
    "essential_band_from_model",
    "essential_bounds_from_inf",
    "exhaustion_limits",
    "extrapolate",
    "infinity_constants",
    "spectrum_bounds_from_isoperimetry",
    "trace_bound_check",
    "volume_growth_check",
    "CapExceeded",
    "ConvergenceError",
    "HorizonError",
    "HypothesisError",
    "InputError",
    "FAMILIES",
    "GraphFamily",
    "make_family",
    "OddGirth",
    "PartitionPair",
    "Region",
    "SphereProfile",
    "WeightedGraph",
    "ball",
    "bipartition",
    "boundary",
    "cut_measure",
    "odd_girth",
    "radial_split",
    "sphere",
    "sphere_profile",
    "volume",
    "HalfLineModel",
    "clustering_C",
    "comparison_bounds",
    "finite_graph_bounds",
    "halfline_model",
    "kappa",
    "solve_theta",
    "cheeger",
    "cheeger_exact",
    "dual_cheeger",
    "dual_cheeger_exact",
    "max_cut_bound",
    "max_cut_exact",
    "surgery_partition",
    "verify_cheeger_pair",
    "DirichletOperator",
    "SpectralResult",
    "dirichlet_operator",
    "dirichlet_spectrum",
    "green_form",
    "spectrum",
    "__version__",
]
