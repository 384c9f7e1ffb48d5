"""Fourth-order compact ADI solver for the 2-D unsteady coupled Burgers equations.

The heavy lifting lives in the compiled extension; this package re-exports the
main operations: grid construction, the two time-marching schemes, the Von
Neumann stability analyzer, and the benchmark problems.
"""

from ._core import (
    AmplificationResult,
    DffCoefficients,
    Grid2D,
    amplification,
    build_grid,
    dff_coefficients,
    error_norms_vs,
    exact_steady,
    fd4_line_derivative,
    initial_fields,
    max_chi_over_phases,
    observed_order,
    solve,
    stability_map,
)

__all__ = [
    "AmplificationResult",
    "DffCoefficients",
    "Grid2D",
    "amplification",
    "build_grid",
    "dff_coefficients",
    "error_norms_vs",
    "exact_steady",
    "fd4_line_derivative",
    "initial_fields",
    "max_chi_over_phases",
    "observed_order",
    "solve",
    "stability_map",
]

__version__ = "0.1.0"
