"""Reference-frame changes acting on wavefunctions and Wigner functions.

A frame is a separable affine map of phase space,

    X(x) = c*x - a,    P(p) = d*p - b,    c*d = 1 on every axis,

applied componentwise.  Requiring ``p.x = beta(p) - alpha(x) + P(p).X(x)`` for
all ``(x, p)`` fixes the eigenstate phases ``alpha`` (position) and ``beta``
(momentum) up to a shared constant ``xi``:

    alpha(x) = -(c*b).x + xi + split*(a.b)
    beta(p)  =  (d*a).p + xi - (1 - split)*(a.b)

The transformed Wigner function is computed three ways: from position
samples, from momentum samples, and by substituting ``W(X(x), P(p))``.
"""
from dataclasses import dataclass, replace
import math

import numpy as np

from . import _fourier
from .errors import BoundaryError, ConfigError, FrameInconsistent, InternalError
from .grid import WIGNER
from .states import WaveFunction, to_momentum, _as_vector
from .wigner import (
    WignerGrid,
    lag_transform,
    real_part_checked,
    shift_coordinates,
    shift_products,
)

CONSISTENCY_TOL = 1e-12
IDENTITY_TOL = 1e-10
RENORM_TOL = 1e-8
EDGE_MASS_TOL = 1e-8
EDGE_WIDTH = 4


@dataclass(frozen=True)
class PhasePolynomial:
    """Affine phase ``linear . v + constant``."""

    linear: tuple
    constant: float = 0.0

    def __call__(self, *coords):
        """Evaluate at per-axis coordinate arrays (broadcastable)."""
        if len(coords) != len(self.linear):
            raise ValueError(f"expected {len(self.linear)} coordinate arrays")
        value = self.constant
        for coef, v in zip(self.linear, coords):
            value = value + coef * np.asarray(v)
        return value


@dataclass(frozen=True)
class AffineFrame:
    """Snapshot of a frame change at time ``t``.

    ``xi`` is the free constant shared by both phases and ``split`` decides
    how the constant ``-a.b`` is divided between them (0 puts it all in
    ``beta``).  Neither affects any Wigner function.
    """

    c: tuple
    a: tuple
    d: tuple
    b: tuple
    t: float = 0.0
    mass: float = None
    xi: float = 0.0
    split: float = 0.0

    def __post_init__(self):
        n = len(self.c)
        for name in ("a", "d", "b"):
            if len(getattr(self, name)) != n:
                raise ConfigError(f"frame component {name} has wrong length")
        for name in ("c", "a", "d", "b"):
            object.__setattr__(self, name, tuple(float(v) for v in getattr(self, name)))
        if any(v == 0.0 for v in self.c):
            raise FrameInconsistent("position scale c must be nonzero")
        _check_consistency(self)

    @property
    def n_dims(self):
        return len(self.c)

    def X(self, x, axis=0):
        return self.c[axis] * np.asarray(x) - self.a[axis]

    def P(self, p, axis=0):
        return self.d[axis] * np.asarray(p) - self.b[axis]

    @property
    def jacobian(self):
        return float(np.prod(self.c) * np.prod(self.d))

    def is_identity(self):
        return all(v == 1.0 for v in self.c + self.d) and not any(self.a + self.b)


def _check_consistency(frame):
    for ci, di in zip(frame.c, frame.d):
        if abs(ci * di - 1.0) > CONSISTENCY_TOL:
            raise FrameInconsistent(f"c*d = {ci * di!r} != 1")


def affine_frame(c, a, d, b, t=0.0, xi=0.0, split=0.0, n_dims=None):
    nd = n_dims or np.atleast_1d(c).size
    vec = lambda v, name: tuple(_as_vector(v, nd, name))
    return AffineFrame(vec(c, "c"), vec(a, "a"), vec(d, "d"), vec(b, "b"), float(t), None, float(xi), float(split))


def identity_frame(g, t=0.0):
    return affine_frame(1.0, 0.0, 1.0, 0.0, t, n_dims=g.n_dims)


def translation_frame(g, shift, t=0.0):
    """Spatial translation by a constant vector."""
    shift = _as_vector(shift, g.n_dims, "shift")
    if not np.all(np.isfinite(shift)):
        raise ConfigError("shift must be finite")
    return affine_frame(1.0, shift, 1.0, 0.0, t, n_dims=g.n_dims)


def galilean_frame(g, velocity, mass, t):
    """Boost by ``velocity``: ``X = x - V t``, ``P = p - m V``."""
    if not mass > 0:
        raise ConfigError("mass must be positive")
    v = _as_vector(velocity, g.n_dims, "velocity")
    return replace(affine_frame(1.0, v * t, 1.0, mass * v, t, n_dims=g.n_dims), mass=float(mass))


def acceleration_frame(g, accel, mass, t):
    """Uniform acceleration: ``X = x - a t^2/2``, ``P = p - m a t``."""
    if not mass > 0:
        raise ConfigError("mass must be positive")
    acc = _as_vector(accel, g.n_dims, "accel")
    return replace(
        affine_frame(1.0, 0.5 * acc * t**2, 1.0, mass * acc * t, t, n_dims=g.n_dims),
        mass=float(mass),
    )


def phase_identity_residual(frame, alpha, beta, x, p):
    """``beta(p) - alpha(x) + P(p).X(x) - p.x`` at one point pair."""
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    px = sum(frame.P(p[i], i) * frame.X(x[i], i) for i in range(frame.n_dims))
    return float(beta(*p) - alpha(*x) + px - np.dot(p, x))


def solve_phases(frame, check_points=5, seed=0):
    """Affine ``alpha(x)``, ``beta(p)`` satisfying the phase-consistency identity."""
    _check_consistency(frame)
    c, a, d, b = (np.array(v) for v in (frame.c, frame.a, frame.d, frame.b))
    ab = float(np.dot(a, b))
    alpha = PhasePolynomial(tuple(float(v) + 0.0 for v in -c * b), frame.xi + frame.split * ab + 0.0)
    beta = PhasePolynomial(tuple(float(v) + 0.0 for v in d * a), frame.xi - (1.0 - frame.split) * ab + 0.0)
    rng = np.random.default_rng(seed)
    scale = 1.0 + abs(frame.xi) + abs(ab) + float(np.abs(np.concatenate([a, b])).max())
    for _ in range(check_points):
        x = rng.uniform(-10, 10, frame.n_dims)
        p = rng.uniform(-10, 10, frame.n_dims)
        r = phase_identity_residual(frame, alpha, beta, x, p)
        if abs(r) > IDENTITY_TOL * scale:
            raise InternalError(f"phase identity violated by {r!r}")
    return alpha, beta


def _check_frame_dims(frame, g):
    if frame.n_dims != g.n_dims:
        raise ConfigError(f"{frame.n_dims}-D frame on a {g.n_dims}-D grid")


def _resample_positions(samples, g, frame):
    """``samples`` evaluated at ``X(x_j)`` on every axis (zero outside the window)."""
    x = g.position_axis(0)
    out = samples
    for ax in range(g.n_dims):
        out = _fourier.resample_axis(out, ax, g.index_of(frame.X(x, ax)))
    return out


def _momentum_image(wf, frame):
    """``sqrt|d| psi~(P(p))`` on the Wigner momentum axis."""
    g = wf.grid
    p = g.momentum_axis(0, WIGNER)
    chi = to_momentum(wf).at([frame.P(p, ax) for ax in range(g.n_dims)])
    return chi * math.sqrt(abs(float(np.prod(frame.d))))


def _check_edges(density, what):
    frac = _fourier.edge_fraction(density, EDGE_WIDTH)
    if frac > EDGE_MASS_TOL:
        raise BoundaryError(f"{what}: {frac:.2e} of the mass lies within {EDGE_WIDTH} samples of the edge")


def transform_wavefunction(wf, frame):
    """``psi'(x) = sqrt|c| exp(-i alpha(x)/hbar) psi(X(x))``."""
    g = wf.grid
    _check_frame_dims(frame, g)
    if frame.is_identity():
        return wf
    alpha, _ = solve_phases(frame)
    image = _resample_positions(wf.samples, g, frame) * math.sqrt(abs(float(np.prod(frame.c))))
    _check_edges(np.abs(image) ** 2, "transformed state")
    phase = np.exp(-1j * alpha(*g.position_mesh()) / g.hbar)
    image = image * phase
    norm = math.sqrt(float(np.sum(np.abs(image) ** 2) * g.cell))
    if abs(norm - 1.0) > RENORM_TOL:
        raise BoundaryError(f"transformed state lost norm (|psi'| = {norm!r})")
    return WaveFunction(g, image / norm)


def transform_wigner_position_route(wf, frame):
    """``W'`` from the position-space integral with the phase ``alpha``.

    ``W'(x,p) = (2 pi hbar)^-n sum_y conj(psi(X(x+y/2))) psi(X(x-y/2))
    exp(-(i/hbar)[alpha(x-y/2) - alpha(x+y/2) - p.y]) dy^n``
    """
    g = wf.grid
    nd, n = g.n_dims, g.points
    _check_frame_dims(frame, g)
    alpha, _ = solve_phases(frame)
    image = _resample_positions(wf.samples, g, frame) * math.sqrt(abs(float(np.prod(frame.c))))
    _check_edges(np.abs(image) ** 2, "transformed state")
    c = shift_products(image)
    behind = alpha(*shift_coordinates(g.x_min, g.dx, n, nd, -1))
    ahead = alpha(*shift_coordinates(g.x_min, g.dx, n, nd, +1))
    c = c * np.exp(-1j * (behind - ahead) / g.hbar)
    w = lag_transform(c, g.p_min(WIGNER), g.dx, g.hbar, +1)
    w *= (2 * g.dx / (2 * math.pi * g.hbar)) ** nd
    w = real_part_checked(w, 1.0 / (math.pi * g.hbar) ** nd)
    _check_edges(np.abs(w), "transformed Wigner function")
    return WignerGrid(g, w, frame.t)


def transform_wigner_momentum_route(wf, frame):
    """``W'`` from the momentum-space integral with the phase ``beta``.

    ``W'(x,p) = (2 pi hbar)^-n sum_u conj(psi~(P(p+u/2))) psi~(P(p-u/2))
    exp((i/hbar)[beta(p+u/2) - beta(p-u/2) - x.u]) du^n``
    """
    g = wf.grid
    nd, n = g.n_dims, g.points
    _check_frame_dims(frame, g)
    _, beta = solve_phases(frame)
    chi = _momentum_image(wf, frame)
    _check_edges(np.abs(chi) ** 2, "transformed momentum state")
    pmin, dp = g.p_min(WIGNER), g.dp_wig
    c = shift_products(chi)
    ahead = beta(*shift_coordinates(pmin, dp, n, nd, +1))
    behind = beta(*shift_coordinates(pmin, dp, n, nd, -1))
    c = c * np.exp(1j * (ahead - behind) / g.hbar)
    w = lag_transform(c, g.x_min, dp, g.hbar, -1)
    w *= (2 * dp / (2 * math.pi * g.hbar)) ** nd
    # rows came out as (p, x); store as (x, p)
    w = np.moveaxis(w, tuple(range(nd)), tuple(range(nd, 2 * nd)))
    w = real_part_checked(w, 1.0 / (math.pi * g.hbar) ** nd)
    _check_edges(np.abs(w), "transformed Wigner function")
    return WignerGrid(g, w, frame.t)


def transform_wigner_closed_form(w, frame):
    """``W'(x, p) = W(X(x), P(p))`` by separable resampling (unit Jacobian)."""
    g = w.grid
    nd = g.n_dims
    _check_frame_dims(frame, g)
    x = g.position_axis(0)
    p = g.momentum_axis(0, WIGNER)
    pmin = g.p_min(WIGNER)
    out = w.samples
    for ax in range(nd):
        out = _fourier.resample_axis(out, ax, g.index_of(frame.X(x, ax)))
        out = _fourier.resample_axis(out, nd + ax, (frame.P(p, ax) - pmin) / g.dp_wig)
    _check_edges(np.abs(out), "transformed Wigner function")
    return WignerGrid(g, out, frame.t)


ROUTES = ("position", "momentum", "closed")


def transform_all_routes(wf, frame, w=None):
    """Dict of the three transformed Wigner functions."""
    from .wigner import wigner_from_state

    if w is None:
        w = wigner_from_state(wf)
    return {
        "position": transform_wigner_position_route(wf, frame),
        "momentum": transform_wigner_momentum_route(wf, frame),
        "closed": transform_wigner_closed_form(w, frame),
    }
