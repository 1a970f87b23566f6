"""Entropy, decoherence and semiquantum-chaos simulators.

The heavy lifting lives in the compiled extension; this package re-exports
its surface.
"""

from ._core import (  # noqa: F401
    BrownianSystem,
    DomainError,
    IntegrationFailure,
    InvalidInput,
    PotentialSpec,
    TdhfState,
    calibrate_double_well,
    classify_spectrum,
    compute_y,
    decoherence_time_analytic,
    dof_entropy_ratio,
    energy_sweep,
    entropy_equality,
    entropy_from_modes,
    entropy_timescale,
    evolve_tdhf,
    gaussian_entropy,
    gaussian_purity,
    linear_entropy,
    linear_flow,
    partial_trace,
    pointer_width,
    power_spectrum,
    short_time_correlations,
    symplectic_eigenvalues,
    thermal_entropy_via_free_energy,
    thermal_state,
    unitary_evolve,
    verify,
    von_neumann_entropy,
)

__version__ = "0.1.0"
