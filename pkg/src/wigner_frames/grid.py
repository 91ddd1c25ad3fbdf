"""Uniform position grids and their Fourier-conjugate momentum axes."""
from dataclasses import dataclass, field
import math

import numpy as np

from .errors import ConfigError, UnsupportedDimension

SUPPORTED_DIMS = (1, 2)
MIN_POINTS = 8

CONJUGATE = "conjugate"
WIGNER = "wigner"


@dataclass(frozen=True)
class PhaseGrid:
    """Isotropic n-dimensional grid ``x_j = x_min + j*dx``, ``j = 0..N-1``.

    The same sample count and window apply to every axis.  Two momentum
    axes are attached: the FFT-conjugate axis with spacing ``2*pi*hbar/(N*dx)``
    and the Wigner axis with half that spacing, which pairs with the lag
    ``y = 2*m*dx`` used by the index-shift Wigner sum.
    """

    n_dims: int
    points: int
    x_min: float
    x_max: float
    hbar: float = 1.0
    dx: float = field(init=False)
    dp_conj: float = field(init=False)
    dp_wig: float = field(init=False)

    def __post_init__(self):
        dx = (self.x_max - self.x_min) / self.points
        object.__setattr__(self, "dx", dx)
        object.__setattr__(self, "dp_conj", 2.0 * math.pi * self.hbar / (self.points * dx))
        object.__setattr__(self, "dp_wig", math.pi * self.hbar / (self.points * dx))

    @property
    def shape(self):
        return (self.points,) * self.n_dims

    @property
    def cell(self):
        """Position volume element ``dx**n``."""
        return self.dx**self.n_dims

    def spacing(self, kind):
        if kind == CONJUGATE:
            return self.dp_conj
        if kind == WIGNER:
            return self.dp_wig
        raise ConfigError(f"unknown momentum axis kind {kind!r}")

    def p_min(self, kind):
        return -(self.points // 2) * self.spacing(kind)

    def index_of(self, x):
        """Fractional index of position ``x`` (inverse of ``position_axis``)."""
        return (np.asarray(x, dtype=float) - self.x_min) / self.dx

    def _check_axis(self, axis):
        if not 0 <= axis < self.n_dims:
            raise IndexError(f"axis {axis} out of range for {self.n_dims}-D grid")

    def position_axis(self, axis=0):
        self._check_axis(axis)
        return self.x_min + np.arange(self.points) * self.dx

    def momentum_axis(self, axis=0, kind=WIGNER):
        self._check_axis(axis)
        return (np.arange(self.points) - self.points // 2) * self.spacing(kind)

    def position_mesh(self):
        x = self.position_axis(0)
        return np.meshgrid(*([x] * self.n_dims), indexing="ij")


def _is_power_of_two(n):
    return n > 0 and n & (n - 1) == 0


def make_grid(n_dims=1, points=256, x_min=-10.0, x_max=10.0, hbar=1.0):
    """Validate parameters and build a :class:`PhaseGrid`."""
    if n_dims not in SUPPORTED_DIMS:
        raise UnsupportedDimension(f"n_dims={n_dims}; supported: {SUPPORTED_DIMS}")
    if int(points) != points or not _is_power_of_two(int(points)) or points < MIN_POINTS:
        raise ConfigError(f"points={points} must be a power of two >= {MIN_POINTS}")
    if not (np.isfinite(x_min) and np.isfinite(x_max)) or x_max <= x_min:
        raise ConfigError(f"empty window [{x_min}, {x_max})")
    if not hbar > 0:
        raise ConfigError(f"hbar={hbar} must be positive")
    return PhaseGrid(int(n_dims), int(points), float(x_min), float(x_max), float(hbar))


def position_axis(g, axis=0):
    return g.position_axis(axis)


def momentum_axis(g, axis=0, kind=WIGNER):
    return g.momentum_axis(axis, kind)
