"""Wigner functions, Weyl kernels and reference-frame changes on discrete phase-space grids."""
from .errors import (
    BoundaryError,
    ConfigError,
    DegenerateState,
    DegenerateSymbol,
    FrameInconsistent,
    GridMismatch,
    InternalError,
    NumericalError,
    UnsupportedDimension,
    UnsupportedLevel,
    WignerError,
)
from .grid import PhaseGrid, make_grid, momentum_axis, position_axis
from .states import (
    MomentumWaveFunction,
    WaveFunction,
    cat_state,
    gaussian_packet,
    ho_eigenstate,
    superpose,
    to_momentum,
)
from .wigner import (
    WignerGrid,
    marginal_momentum,
    marginal_position,
    negativity_volume,
    wigner_from_state,
)
from .weyl import (
    KernelMatrix,
    Symbol,
    expectation_via_phase_space,
    hs_identity_check,
    weyl_kernel,
    wigner_transform_operator,
)
from .frames import (
    AffineFrame,
    PhasePolynomial,
    acceleration_frame,
    affine_frame,
    galilean_frame,
    solve_phases,
    transform_wavefunction,
    transform_wigner_closed_form,
    transform_wigner_momentum_route,
    transform_wigner_position_route,
    translation_frame,
)

__version__ = "0.1.0"

__all__ = [
    "PhaseGrid",
    "make_grid",
    "momentum_axis",
    "position_axis",
    "BoundaryError",
    "ConfigError",
    "DegenerateState",
    "DegenerateSymbol",
    "FrameInconsistent",
    "GridMismatch",
    "InternalError",
    "NumericalError",
    "UnsupportedDimension",
    "UnsupportedLevel",
    "WignerError",
    "MomentumWaveFunction",
    "WaveFunction",
    "cat_state",
    "gaussian_packet",
    "ho_eigenstate",
    "superpose",
    "to_momentum",
    "WignerGrid",
    "marginal_momentum",
    "marginal_position",
    "negativity_volume",
    "wigner_from_state",
    "KernelMatrix",
    "Symbol",
    "expectation_via_phase_space",
    "hs_identity_check",
    "weyl_kernel",
    "wigner_transform_operator",
    "AffineFrame",
    "PhasePolynomial",
    "acceleration_frame",
    "affine_frame",
    "galilean_frame",
    "solve_phases",
    "transform_wavefunction",
    "transform_wigner_closed_form",
    "transform_wigner_momentum_route",
    "transform_wigner_position_route",
    "translation_frame",
]
