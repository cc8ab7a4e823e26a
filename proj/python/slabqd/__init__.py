"""Slab discrete-ordinates transport with quasidiffusion acceleration."""

from ._core import (
    Mesh,
    NegativeFluxError,
    Quadrature,
    Region,
    SingularSystemError,
    Solution,
    build_mesh,
    fourier_symbols,
    gauss_legendre,
    measure_rho,
    run_cli,
    solve,
    spectral_radius,
)

__all__ = [
    "Mesh",
    "NegativeFluxError",
    "Quadrature",
    "Region",
    "SingularSystemError",
    "Solution",
    "build_mesh",
    "fourier_symbols",
    "gauss_legendre",
    "measure_rho",
    "run_cli",
    "solve",
    "spectral_radius",
]
