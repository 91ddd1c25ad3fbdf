"""Low-level FFT and band-limited resampling helpers.

Everything here works on plain numpy arrays in index units; the physical
scaling lives in the calling modules.
"""
import os

import numpy as np
import scipy.fft as sfft


def workers():
    """Thread cap for scipy.fft, taken from ``WIGNER_THREADS`` (default 1)."""
    value = os.environ.get("WIGNER_THREADS", "").strip()
    if not value:
        return 1
    try:
        n = int(value)
    except ValueError:
        return 1
    return max(1, n)


def fft(a, axes):
    return sfft.fftn(a, axes=axes, workers=workers())


def ifft(a, axes):
    return sfft.ifftn(a, axes=axes, workers=workers())


def centered_indices(n):
    """Integers ``-n/2, ..., n/2 - 1``."""
    return np.arange(n) - n // 2


def periodic_sinc_matrix(n, positions, zero_outside=True):
    """Band-limited interpolation matrix for ``n`` periodic samples.

    Row ``t`` evaluates the trigonometric interpolant (symmetric Nyquist
    term) of samples ``f[0..n-1]`` at fractional index ``positions[t]``.
    With ``zero_outside`` the rows for positions outside ``[0, n-1]`` are
    zero, which is how the zero-padding convention enters.
    """
    s = np.asarray(positions, dtype=float).reshape(-1)
    d = s[:, None] - np.arange(n)[None, :]
    nearest = np.rint(d)
    on_grid = np.abs(d - nearest) < 1e-12
    with np.errstate(divide="ignore", invalid="ignore"):
        m = np.sin(np.pi * d) / (n * np.tan(np.pi * d / n))
    m = np.where(on_grid, (np.mod(nearest, n) == 0).astype(float), m)
    if zero_outside:
        outside = (s < -1e-12) | (s > n - 1 + 1e-12)
        m[outside, :] = 0.0
    return m


def apply_along(matrix, a, axis):
    """Contract ``matrix`` (targets x sources) with axis ``axis`` of ``a``."""
    out = np.tensordot(matrix, a, axes=([1], [axis]))
    return np.moveaxis(out, 0, axis)


def integer_shift(a, shift, axis):
    """``out[i] = a[i - shift]`` along ``axis`` with zero fill (no wraparound)."""
    out = np.zeros_like(a)
    n = a.shape[axis]
    if abs(shift) >= n:
        return out
    src = [slice(None)] * a.ndim
    dst = [slice(None)] * a.ndim
    if shift >= 0:
        src[axis] = slice(0, n - shift)
        dst[axis] = slice(shift, n)
    else:
        src[axis] = slice(-shift, n)
        dst[axis] = slice(0, n + shift)
    out[tuple(dst)] = a[tuple(src)]
    return out


def resample_axis(a, axis, positions):
    """Evaluate ``a`` along ``axis`` at fractional indices ``positions``.

    Uniform integer offsets (``positions = arange(n) - k``) are done by an
    exact zero-filled shift; anything else uses band-limited interpolation.
    """
    n = a.shape[axis]
    positions = np.asarray(positions, dtype=float)
    offset = positions - np.arange(n)
    k = np.rint(offset[0])
    if np.all(np.abs(offset - k) < 1e-9):
        return integer_shift(a, -int(k), axis)
    return apply_along(periodic_sinc_matrix(n, positions), a, axis)


def edge_fraction(density, width=4):
    """Fraction of ``sum(density)`` within ``width`` samples of any edge."""
    total = density.sum()
    if total <= 0:
        return 0.0
    interior = density
    for ax in range(density.ndim):
        sl = [slice(None)] * density.ndim
        sl[ax] = slice(width, density.shape[ax] - width)
        interior = interior[tuple(sl)]
    return float((total - interior.sum()) / total)
