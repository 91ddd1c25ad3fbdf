"""Wigner function of a pure state and the quantities derived from it."""
from dataclasses import dataclass
import math

import numpy as np

from . import _fourier
from .errors import GridMismatch, NumericalError
from .grid import CONJUGATE, WIGNER, PhaseGrid
from .states import to_momentum

REALNESS_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class WignerGrid:
    """Real ``W(x, p)`` on positions x Wigner momenta.

    ``samples`` has shape ``(N,)*n + (N,)*n``: position axes first, then
    momentum axes.  ``time_tag`` is the frame time of a transformed function.
    """

    grid: PhaseGrid
    samples: np.ndarray
    time_tag: float = 0.0

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        expected = self.grid.shape * 2
        if samples.shape != expected:
            raise GridMismatch(f"Wigner samples shape {samples.shape} != {expected}")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @property
    def cell(self):
        g = self.grid
        return (g.dx * g.dp_wig) ** g.n_dims

    def total(self):
        return float(self.samples.sum() * self.cell)

    def purity(self):
        g = self.grid
        return float((2 * math.pi * g.hbar) ** g.n_dims * np.sum(self.samples**2) * self.cell)


def _axis_shape(vec, ax, ndim):
    shape = [1] * ndim
    shape[ax] = vec.size
    return vec.reshape(shape)


def shift_products(f):
    """``C[j, m] = conj(f[j+m]) * f[j-m]`` with ``m = -N/2..N/2-1`` per axis.

    Out-of-window indices contribute zero.  Result shape ``(N,)*n + (N,)*n``
    with the lag axes (stored at index ``m + N/2``) last.
    """
    nd = f.ndim
    n = f.shape[0]
    padded = np.zeros((3 * n,) * nd, dtype=complex)
    padded[(slice(n, 2 * n),) * nd] = f
    j = np.arange(n)
    m = _fourier.centered_indices(n)
    plus, minus = [], []
    for ax in range(nd):
        jj = _axis_shape(j, ax, 2 * nd)
        mm = _axis_shape(m, nd + ax, 2 * nd)
        plus.append(jj + mm + n)
        minus.append(jj - mm + n)
    return np.conj(padded[tuple(plus)]) * padded[tuple(minus)]


def shift_coordinates(origin, step, n, nd, sign):
    """Coordinates ``origin + (j + sign*m)*step`` broadcast over ``(j, m)`` axes."""
    j = np.arange(n)
    m = _fourier.centered_indices(n)
    coords = []
    for ax in range(nd):
        jj = _axis_shape(j, ax, 2 * nd)
        mm = _axis_shape(m, nd + ax, 2 * nd)
        coords.append(origin + (jj + sign * mm) * step)
    return coords


def lag_transform(c, conj_origin, lag_step, hbar, sign):
    """``out[j, k] = sum_m c[j, m] exp(sign*i*q_k*2*m*lag_step/hbar)``.

    ``q_k = conj_origin + k*conj_step`` with ``conj_step*2*lag_step = 2*pi*hbar/N``,
    so the sum is a length-N DFT over each lag axis after a phase ramp.
    """
    nd = c.ndim // 2
    n = c.shape[0]
    m = _fourier.centered_indices(n)
    ramp = np.exp(sign * 1j * conj_origin * 2 * m * lag_step / hbar)
    alt = (-1.0) ** np.arange(n)
    a = c
    for ax in range(nd):
        a = a * _axis_shape(ramp, nd + ax, 2 * nd)
    axes = tuple(range(nd, 2 * nd))
    if sign > 0:
        a = _fourier.ifft(a, axes=axes) * n**nd
    else:
        a = _fourier.fft(a, axes=axes)
    for ax in range(nd):
        a = a * _axis_shape(alt, nd + ax, 2 * nd)
    return a


def real_part_checked(w, scale):
    residue = np.abs(w.imag).max() if w.size else 0.0
    if residue >= REALNESS_TOL * max(1.0, scale):
        raise NumericalError(f"Wigner imaginary residue {residue:.3e} exceeds tolerance")
    return w.real


def wigner_from_state(wf):
    """Wigner function on the (x, Wigner-p) grid via the index-shift sum.

    ``W(x_j, p) = (2 pi hbar)^-n sum_m conj(psi_{j+m}) psi_{j-m} exp(i p.2m dx/hbar) (2dx)^n``
    """
    g = wf.grid
    nd = g.n_dims
    c = shift_products(wf.samples)
    w = lag_transform(c, g.p_min(WIGNER), g.dx, g.hbar, +1)
    w *= (2 * g.dx / (2 * math.pi * g.hbar)) ** nd
    return WignerGrid(g, real_part_checked(w, 1.0 / (math.pi * g.hbar) ** nd))


def marginal_position(w):
    """Integral over momentum: a density on the position grid."""
    g = w.grid
    nd = g.n_dims
    return w.samples.sum(axis=tuple(range(nd, 2 * nd))) * g.dp_wig**nd


def marginal_momentum(w):
    """Integral over position: a density on the Wigner momentum axis."""
    g = w.grid
    nd = g.n_dims
    return w.samples.sum(axis=tuple(range(nd))) * g.dx**nd


def momentum_density_on_wigner_axis(wf):
    """``|psi~(p)|^2`` band-limited-resampled onto the Wigner momentum axis."""
    g = wf.grid
    mwf = to_momentum(wf)
    p = g.momentum_axis(0, WIGNER)
    return np.abs(mwf.at([p] * g.n_dims)) ** 2


def negativity_volume(w):
    return float(np.sum(np.maximum(0.0, -w.samples)) * w.cell)


def check_bound(w, tol=1e-8):
    """True when ``|W| <= (1/(pi hbar))^n + tol`` everywhere."""
    g = w.grid
    return bool(np.abs(w.samples).max() <= (1.0 / (math.pi * g.hbar)) ** g.n_dims + tol)


def same_grid(a, b):
    if a.grid != b.grid:
        raise GridMismatch("objects live on different grids")


__all__ = [
    "WignerGrid",
    "wigner_from_state",
    "marginal_position",
    "marginal_momentum",
    "momentum_density_on_wigner_axis",
    "negativity_volume",
    "check_bound",
    "CONJUGATE",
]
