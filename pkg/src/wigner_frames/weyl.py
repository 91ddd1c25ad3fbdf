"""Weyl quantization through integral kernels, and its inverse.

Operators are never built as abstract objects: a symbol ``f(x, p)`` maps to
the kernel

    K(x, x') = (2 pi hbar)^-n sum_p f((x+x')/2, p) exp(i p.(x-x')/hbar) dp^n

and a kernel maps back to a symbol through the Wigner transform.  Lags
``x - x'`` are kept in the centered range ``|j - k| <= N/2``; larger lags
would only repeat periodic images of the momentum sum.
"""
from dataclasses import dataclass
import math

import numpy as np

from . import _fourier
from .errors import ConfigError, DegenerateSymbol, GridMismatch
from .grid import CONJUGATE, WIGNER, PhaseGrid

HERMITIAN_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Symbol:
    """Phase-space function sampled on positions x one momentum axis.

    ``kind`` names the momentum axis (``"conjugate"`` or ``"wigner"``).
    Samples have shape ``(N,)*n + (N,)*n``.
    """

    grid: PhaseGrid
    samples: np.ndarray
    kind: str = CONJUGATE
    real_valued: bool = False

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=complex)
        if samples.shape != self.grid.shape * 2:
            raise GridMismatch(f"symbol shape {samples.shape} != {self.grid.shape * 2}")
        if not np.all(np.isfinite(samples)):
            raise ValueError("symbol has non-finite samples")
        if self.kind not in (CONJUGATE, WIGNER):
            raise ConfigError(f"unknown momentum axis kind {self.kind!r}")
        if self.real_valued and np.abs(samples.imag).max() >= 1e-12:
            raise ValueError("symbol flagged real_valued has imaginary parts")
        object.__setattr__(self, "samples", samples)

    @classmethod
    def from_function(cls, grid, func, kind=CONJUGATE):
        """Sample ``func(x, p)`` where ``x``, ``p`` are lists of meshgrid arrays."""
        nd = grid.n_dims
        axes = [grid.position_axis(0)] * nd + [grid.momentum_axis(0, kind)] * nd
        mesh = np.meshgrid(*axes, indexing="ij")
        values = np.broadcast_to(np.asarray(func(mesh[:nd], mesh[nd:]), dtype=complex), mesh[0].shape)
        real = bool(np.all(np.abs(values.imag) < 1e-12))
        if real:
            values = values.real.astype(complex)
        return cls(grid, np.array(values), kind, real)

    @property
    def cell(self):
        g = self.grid
        return (g.dx * g.spacing(self.kind)) ** g.n_dims


@dataclass(frozen=True, eq=False)
class KernelMatrix:
    """``K(x, x')`` as an ``N^n x N^n`` matrix (row-major position multi-index)."""

    grid: PhaseGrid
    entries: np.ndarray

    def __post_init__(self):
        size = self.grid.points**self.grid.n_dims
        entries = np.asarray(self.entries, dtype=complex)
        if entries.shape != (size, size):
            raise GridMismatch(f"kernel shape {entries.shape} != {(size, size)}")
        if not np.all(np.isfinite(entries)):
            raise ValueError("kernel has non-finite entries")
        object.__setattr__(self, "entries", entries)

    def is_hermitian(self, tol=HERMITIAN_TOL):
        return bool(np.abs(self.entries - self.entries.conj().T).max() <= tol * max(1.0, np.abs(self.entries).max()))

    def apply(self, samples):
        """Action on a state sampled on the grid: ``sum_x' K(x, x') psi(x') dx'^n``."""
        flat = np.asarray(samples).reshape(-1)
        return (self.entries @ flat).reshape(self.grid.shape) * self.grid.cell

    @classmethod
    def outer(cls, wf):
        """Kernel of the projector ``|psi><psi|``."""
        v = wf.samples.reshape(-1)
        return cls(wf.grid, np.outer(v, v.conj()))


def _axis_shape(vec, ax, ndim):
    shape = [1] * ndim
    shape[ax] = vec.size
    return vec.reshape(shape)


def _half_grid(samples, nd, n):
    """Resample the position axes onto the half-spacing grid (2N points)."""
    targets = np.arange(2 * n) / 2.0
    mat = _fourier.periodic_sinc_matrix(n, targets, zero_outside=False)
    out = samples
    for ax in range(nd):
        out = _fourier.apply_along(mat, out, ax)
    return out


def weyl_kernel(f):
    """Discretized integral kernel of the Weyl quantization of ``f``."""
    if f.kind != CONJUGATE:
        raise ConfigError("weyl_kernel needs the symbol on the conjugate momentum axis")
    g = f.grid
    nd, n = g.n_dims, g.points
    fh = _half_grid(f.samples, nd, n)
    # F[s, L] = (2 pi hbar)^-1 dp sum_l f(s, p_l) exp(2 pi i l L / N) with centered l;
    # centering contributes the factor (-1)^L
    spectrum = _fourier.ifft(fh, axes=tuple(range(nd, 2 * nd))) * n**nd
    lag_sign = (-1.0) ** np.arange(n)
    for ax in range(nd):
        spectrum = spectrum * _axis_shape(lag_sign, nd + ax, 2 * nd)
    spectrum *= (g.dp_conj / (2 * math.pi * g.hbar)) ** nd

    a = np.arange(n)
    mask = np.ones((n,) * (2 * nd), dtype=bool)
    s_idx, l_idx = [], []
    for ax in range(nd):
        aa = _axis_shape(a, ax, 2 * nd)
        bb = _axis_shape(a, nd + ax, 2 * nd)
        lag = aa - bb
        mask = mask & (np.abs(lag) <= n // 2)
        s_idx.append(np.broadcast_to(aa + bb, mask.shape))
        l_idx.append(np.broadcast_to(np.mod(lag, n), mask.shape))
    k = spectrum[tuple(s_idx) + tuple(l_idx)]
    k = np.where(mask, k, 0.0)
    size = n**nd
    return KernelMatrix(g, k.reshape(size, size))


def _center_lag_axis(k, ax, nd, n, half_shift):
    """Replace the (row, column) axis pair ``ax`` by (center j, lag L mod 2N).

    Even lags sit on grid centers and are gathered directly; odd lags sit on
    half-integer centers and are moved to integer centers by band-limited
    interpolation along the center direction.
    """
    k = np.moveaxis(k, (ax, nd + ax), (-2, -1))
    batch = k.shape[:-2]
    out = np.zeros(batch + (n, 2 * n), dtype=complex)
    j = np.arange(n)[:, None]
    # even lags L = 2m, rows a = j - m, columns b = j + m
    m = _fourier.centered_indices(n)[None, :]
    a, b = j - m, j + m
    ok = (a >= 0) & (a < n) & (b >= 0) & (b < n)
    vals = np.where(ok, k[..., np.clip(a, 0, n - 1), np.clip(b, 0, n - 1)], 0.0)
    out[..., np.broadcast_to(j, ok.shape), np.broadcast_to(np.mod(2 * m, 2 * n), ok.shape)] = vals
    # odd lags L = 2m + 1 around centers j' + 1/2, j' = 0..N-2; buffer offset N/2
    jp = np.arange(n - 1)[:, None]
    a, b = jp - m, jp + m + 1
    ok = (a >= 0) & (a < n) & (b >= 0) & (b < n)
    half = np.where(ok, k[..., np.clip(a, 0, n - 1), np.clip(b, 0, n - 1)], 0.0)
    buf = np.zeros(batch + (2 * n, n), dtype=complex)
    buf[..., n // 2: n // 2 + n - 1, :] = half
    interp = np.einsum("ts,...sl->...tl", half_shift, buf)
    out[..., np.arange(n)[:, None], np.mod(2 * m + 1, 2 * n)] = interp
    return np.moveaxis(out, (-2, -1), (ax, nd + ax))


def wigner_transform_operator(kernel):
    """Wigner transform (inverse Weyl map) of a kernel, on the Wigner momentum axis.

    ``A_W(x, p) = sum_x' K(x - x'/2, x + x'/2) exp(i p.x'/hbar) dx'^n``
    """
    g = kernel.grid
    nd, n = g.n_dims, g.points
    k = kernel.entries.reshape((n,) * (2 * nd))
    # buffer index s holds center (s - N/2 + 1/2); integer center j sits at s = j + N/2 - 1/2
    half_shift = _fourier.periodic_sinc_matrix(2 * n, np.arange(n) + n // 2 - 0.5)
    for ax in range(nd):
        k = _center_lag_axis(k, ax, nd, n, half_shift)
    # sum over L in [-N, N) of T[j, L] exp(i pi k L / N): a 2N-point DFT
    spectrum = _fourier.ifft(k, axes=tuple(range(nd, 2 * nd))) * (2 * n) ** nd
    pick = np.mod(_fourier.centered_indices(n), 2 * n)
    for ax in range(nd):
        spectrum = np.take(spectrum, pick, axis=nd + ax)
    spectrum *= g.dx**nd
    return Symbol(g, spectrum, WIGNER, False)


def hs_identity_check(f):
    """Both sides of the Hilbert-Schmidt identity and their relative gap."""
    if f.kind != CONJUGATE:
        raise ConfigError("hs_identity_check needs the conjugate momentum axis")
    g = f.grid
    nd = g.n_dims
    rhs = float(np.sum(np.abs(f.samples) ** 2) * f.cell / (2 * math.pi * g.hbar) ** nd)
    if rhs < 1e-300:
        raise DegenerateSymbol("symbol has zero L2 norm")
    k = weyl_kernel(f)
    lhs = float(np.sum(np.abs(k.entries) ** 2) * g.dx ** (2 * nd))
    return lhs, rhs, abs(lhs - rhs) / rhs


def expectation_via_phase_space(w, a):
    """``sum W(x, p) A_W(x, p) dx^n dp^n`` over the Wigner grid."""
    if w.grid != a.grid:
        raise GridMismatch("Wigner function and symbol live on different grids")
    if a.kind != WIGNER:
        raise ConfigError("the symbol must be sampled on the Wigner momentum axis")
    if not a.real_valued:
        raise ConfigError("expectation needs a real-valued symbol")
    return float(np.sum(w.samples * a.samples.real) * w.cell)
