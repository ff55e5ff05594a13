"""Numerical laboratory for Hessian spectra and Hessian descent in mixed spherical spin glasses."""

from .mixture import MixtureSpec, full_rsb_check, ground_state_target, xi_eval
from .disorder import DisorderSpec, DisorderTensor, sample_tensor, subgaussian_diagnostic, sym_coeff
from .hamiltonian import (
    Model,
    build_model,
    directional_derivative,
    energy,
    euclidean_hessian,
    gradient,
    north_pole,
    projected_hessian,
    random_ball_point,
    random_sphere_point,
    regularity_report,
    truncate,
)
from .laws import (
    SemicircleLaw,
    catalan_target,
    delta_calibration,
    edge_mass,
    semicircle_cdf,
    semicircle_comparison_bound,
    w1_distance,
)
from .spectral import EmpiricalDistribution, eigen_symmetric, esd, normalized_trace_moment, trace_moments
from .descent import DescentConfig, DescentTrace, hessian_descent, predicted_energy
from .experiments import (
    EXPERIMENTS,
    ExperimentConfig,
    ExperimentReport,
    run_concentration,
    run_descent,
    run_edge,
    run_mixture_info,
    run_moments,
    run_spectrum,
    run_universality,
    write_report,
)

__all__ = [
    "MixtureSpec",
    "full_rsb_check",
    "ground_state_target",
    "xi_eval",
    "DisorderSpec",
    "DisorderTensor",
    "sample_tensor",
    "subgaussian_diagnostic",
    "sym_coeff",
    "Model",
    "build_model",
    "directional_derivative",
    "energy",
    "euclidean_hessian",
    "gradient",
    "north_pole",
    "projected_hessian",
    "random_ball_point",
    "random_sphere_point",
    "regularity_report",
    "truncate",
    "SemicircleLaw",
    "catalan_target",
    "delta_calibration",
    "edge_mass",
    "semicircle_cdf",
    "semicircle_comparison_bound",
    "w1_distance",
    "EmpiricalDistribution",
    "eigen_symmetric",
    "esd",
    "normalized_trace_moment",
    "trace_moments",
    "DescentConfig",
    "DescentTrace",
    "hessian_descent",
    "predicted_energy",
    "EXPERIMENTS",
    "ExperimentConfig",
    "ExperimentReport",
    "run_concentration",
    "run_descent",
    "run_edge",
    "run_mixture_info",
    "run_moments",
    "run_spectrum",
    "run_universality",
    "write_report",
]

__version__ = "0.1.0"
