"""Normalized test wavefunctions and their momentum representation.

Momentum convention: ``psi~(p) = (2 pi hbar)^(-n/2) sum_j psi(x_j) exp(-i p.x_j/hbar) dx^n``
on the centered conjugate axis.  Centering is done with phase ramps, so the
axes stay exactly symmetric and no array rolls are involved.
"""
from dataclasses import dataclass
import math

import numpy as np

from . import _fourier
from .errors import BoundaryError, DegenerateState, GridMismatch, UnsupportedLevel, ConfigError
from .grid import CONJUGATE, PhaseGrid

NORM_TOL = 1e-10
EDGE_TOL = 1e-8
MAX_LEVEL = 64


def _as_vector(value, n, name):
    v = np.atleast_1d(np.asarray(value, dtype=float))
    if v.size == 1 and n > 1:
        v = np.repeat(v, n)
    if v.shape != (n,):
        raise ConfigError(f"{name} needs {n} component(s), got {v.size}")
    return v


def _outer_layer_max(a):
    m = 0.0
    for ax in range(a.ndim):
        m = max(m, np.abs(np.take(a, 0, axis=ax)).max(), np.abs(np.take(a, -1, axis=ax)).max())
    return m


@dataclass(frozen=True, eq=False)
class WaveFunction:
    """Samples of a unit-norm state on ``grid``; validated on construction."""

    grid: PhaseGrid
    samples: np.ndarray

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=complex)
        if samples.shape != self.grid.shape:
            raise GridMismatch(f"samples shape {samples.shape} != grid shape {self.grid.shape}")
        norm = self.norm_squared(samples)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"wavefunction not normalized: |psi|^2 = {norm!r}")
        peak = np.abs(samples).max()
        if _outer_layer_max(samples) >= EDGE_TOL * peak:
            raise BoundaryError("wavefunction does not decay at the window edge")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    def norm_squared(self, samples=None):
        s = self.samples if samples is None else samples
        return float(np.sum(np.abs(s) ** 2) * self.grid.cell)

    @classmethod
    def normalized(cls, grid, samples):
        """Rescale ``samples`` to unit norm and validate."""
        samples = np.asarray(samples, dtype=complex)
        norm = np.sqrt(np.sum(np.abs(samples) ** 2) * grid.cell)
        if not norm > 1e-12:
            raise DegenerateState("state has (numerically) zero norm")
        return cls(grid, samples / norm)

    def density(self):
        return np.abs(self.samples) ** 2


@dataclass(frozen=True, eq=False)
class MomentumWaveFunction:
    """``psi~`` sampled on the centered conjugate momentum axes."""

    grid: PhaseGrid
    samples: np.ndarray

    def norm_squared(self):
        return float(np.sum(np.abs(self.samples) ** 2) * self.grid.dp_conj**self.grid.n_dims)

    def density(self):
        return np.abs(self.samples) ** 2

    def to_position(self):
        """Exact inverse of :func:`to_momentum` (no renormalization)."""
        return from_momentum(self)

    def at(self, momenta):
        """Band-limited evaluation of ``psi~`` at arbitrary momenta.

        ``momenta`` is one 1-D array per axis (separable target grid).  Values
        outside the conjugate window are zero.
        """
        g = self.grid
        psi = from_momentum(self)
        x = g.position_axis(0)
        lo = g.p_min(CONJUGATE)
        hi = -lo
        out = psi
        scale = g.dx / math.sqrt(2.0 * math.pi * g.hbar)
        for ax, q in enumerate(momenta):
            q = np.asarray(q, dtype=float)
            mat = scale * np.exp(-1j * np.outer(q, x) / g.hbar)
            mat[(q < lo - 1e-12) | (q >= hi - 1e-12)] = 0.0
            out = _fourier.apply_along(mat, out, ax)
        return out


def _ramps(grid):
    n = grid.points
    p = grid.momentum_axis(0, CONJUGATE)
    sign = (-1.0) ** np.arange(n)
    phase = np.exp(-1j * p * grid.x_min / grid.hbar)
    return sign, phase


def _broadcast(vec, ax, ndim):
    shape = [1] * ndim
    shape[ax] = vec.size
    return vec.reshape(shape)


def to_momentum(wf):
    """Centered FFT of ``wf`` onto the conjugate momentum axes."""
    g = wf.grid
    nd = g.n_dims
    sign, phase = _ramps(g)
    a = np.array(wf.samples, dtype=complex)
    for ax in range(nd):
        a = a * _broadcast(sign, ax, nd)
    a = _fourier.fft(a, axes=tuple(range(nd)))
    for ax in range(nd):
        a = a * _broadcast(phase, ax, nd)
    a *= (g.dx / math.sqrt(2.0 * math.pi * g.hbar)) ** nd
    return MomentumWaveFunction(g, a)


def from_momentum(mwf):
    g = mwf.grid
    nd = g.n_dims
    sign, phase = _ramps(g)
    a = np.array(mwf.samples, dtype=complex)
    for ax in range(nd):
        a = a * _broadcast(np.conj(phase), ax, nd)
    a = _fourier.ifft(a, axes=tuple(range(nd)))
    for ax in range(nd):
        a = a * _broadcast(sign, ax, nd)
    return a / (g.dx / math.sqrt(2.0 * math.pi * g.hbar)) ** nd


def gaussian_packet(g, x0=0.0, p0=0.0, sigma=1.0 / math.sqrt(2.0)):
    """``exp(-(x-x0)^2/(4 sigma^2)) exp(i p0.x/hbar)``, normalized on the grid."""
    nd = g.n_dims
    x0 = _as_vector(x0, nd, "x0")
    p0 = _as_vector(p0, nd, "p0")
    sigma = _as_vector(sigma, nd, "sigma")
    if np.any(sigma <= 0):
        raise ConfigError("sigma must be positive")
    if np.any(x0 - 6 * sigma < g.x_min) or np.any(x0 + 6 * sigma > g.x_max):
        raise BoundaryError(f"packet x0={x0}, sigma={sigma} leaks past [{g.x_min}, {g.x_max}]")
    mesh = g.position_mesh()
    expo = np.zeros(g.shape, dtype=complex)
    for ax in range(nd):
        expo += -((mesh[ax] - x0[ax]) ** 2) / (4 * sigma[ax] ** 2) + 1j * p0[ax] * mesh[ax] / g.hbar
    return WaveFunction.normalized(g, np.exp(expo))


def hermite_functions(level, u):
    """Normalized Hermite functions ``h_0..h_level`` at ``u`` (stable recurrence).

    ``h_k(u) = pi^(-1/4) H_k(u) exp(-u^2/2) / sqrt(2^k k!)``.
    """
    u = np.asarray(u, dtype=float)
    h = np.empty((level + 1,) + u.shape)
    h[0] = np.pi**-0.25 * np.exp(-(u**2) / 2)
    if level >= 1:
        h[1] = math.sqrt(2.0) * u * h[0]
    for k in range(1, level):
        h[k + 1] = math.sqrt(2.0 / (k + 1)) * u * h[k] - math.sqrt(k / (k + 1)) * h[k - 1]
    return h


def ho_eigenstate(g, level=0, mass=1.0, omega=1.0):
    """Harmonic-oscillator eigenstate; an int ``level`` applies to every axis."""
    nd = g.n_dims
    levels = np.atleast_1d(np.asarray(level))
    if levels.size == 1:
        levels = np.repeat(levels, nd)
    if levels.shape != (nd,) or np.any(levels != np.rint(levels)):
        raise ConfigError(f"level must be an integer or {nd} integers")
    levels = levels.astype(int)
    if np.any(levels < 0):
        raise ConfigError("level must be >= 0")
    if np.any(levels > MAX_LEVEL):
        raise UnsupportedLevel(f"level {levels.max()} > {MAX_LEVEL}")
    if not (mass > 0 and omega > 0):
        raise ConfigError("mass and omega must be positive")
    scale = math.sqrt(mass * omega / g.hbar)
    x = g.position_axis(0)
    samples = np.ones(g.shape)
    for ax, n in enumerate(levels):
        h = hermite_functions(n, scale * x)[n] * math.sqrt(scale)
        samples = samples * _broadcast(h, ax, nd)
    return WaveFunction.normalized(g, samples)


def superpose(parts):
    """Renormalized sum of ``(coefficient, WaveFunction)`` pairs."""
    parts = list(parts)
    if not parts:
        raise DegenerateState("empty superposition")
    g = parts[0][1].grid
    total = np.zeros(g.shape, dtype=complex)
    for coeff, wf in parts:
        if wf.grid != g:
            raise GridMismatch("superposed states live on different grids")
        total += complex(coeff) * wf.samples
    return WaveFunction.normalized(g, total)


def cat_state(g, separation=3.0, sigma=1.0 / math.sqrt(2.0), p0=0.0, sign=1):
    """``|x0> + sign |-x0>`` superposition of Gaussian packets."""
    sep = _as_vector(separation, g.n_dims, "separation")
    return superpose([
        (1.0, gaussian_packet(g, -sep, p0, sigma)),
        (sign, gaussian_packet(g, sep, p0, sigma)),
    ])
