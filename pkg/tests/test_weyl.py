import math

import numpy as np
import pytest
from scipy import integrate

from wigner_frames import (
    ConfigError,
    DegenerateSymbol,
    GridMismatch,
    KernelMatrix,
    Symbol,
    expectation_via_phase_space,
    gaussian_packet,
    ho_eigenstate,
    hs_identity_check,
    make_grid,
    to_momentum,
    weyl_kernel,
    wigner_from_state,
    wigner_transform_operator,
)


def brute_kernel(g, func):
    """Direct double loop over the kernel sum; symbol evaluated exactly at midpoints."""
    x = g.position_axis()
    p = g.momentum_axis(0, "conjugate")
    n = g.points
    k = np.zeros((n, n), dtype=complex)
    for j in range(n):
        for l in range(n):
            if abs(j - l) > n // 2:
                continue
            mid = 0.5 * (x[j] + x[l])
            terms = [func(mid, pk) * np.exp(1j * pk * (x[j] - x[l]) / g.hbar) for pk in p]
            k[j, l] = sum(terms) * g.dp_conj / (2 * math.pi * g.hbar)
    return k


def sym(g, func, kind="conjugate"):
    return Symbol.from_function(g, lambda x, p: func(x[0], p[0]), kind)


HS_GRID = make_grid(1, 128, -12, 12)
GAUSS = lambda x, p: np.exp(-(x**2) - p**2)
DECAYING = {
    "gaussian": GAUSS,
    "x_gaussian": lambda x, p: x * GAUSS(x, p),
    "p2_gaussian": lambda x, p: p**2 * GAUSS(x, p),
    "x4_gaussian": lambda x, p: x**4 * GAUSS(x, p),
    "x2p2_gaussian": lambda x, p: x**2 * p**2 * GAUSS(x, p),
    "shifted": lambda x, p: (1 + 0.3 * x * p) * np.exp(-((x - 1) ** 2) / 2 - (p + 0.5) ** 2 / 3),
}


def test_identity_symbol_gives_delta():
    g = make_grid(1, 8, -1, 1)
    k = weyl_kernel(sym(g, lambda x, p: np.ones_like(x))).entries
    diag = np.diag(k)
    np.testing.assert_allclose(diag, 1 / g.dx, atol=1e-12)
    off = k - np.diag(diag)
    assert np.abs(off).max() < 1e-10 * abs(diag[0])


def test_position_symbol_is_diagonal():
    g = make_grid(1, 16, -4, 4)
    k = weyl_kernel(sym(g, lambda x, p: x + 0 * p)).entries
    np.testing.assert_allclose(np.diag(k).real * g.dx, g.position_axis(), atol=1e-12)
    assert np.abs(k - np.diag(np.diag(k))).max() < 1e-12


def test_momentum_symbol_against_brute_force():
    g = make_grid(1, 8, -1, 1)
    k = weyl_kernel(sym(g, lambda x, p: p + 0 * x)).entries
    np.testing.assert_allclose(k, brute_kernel(g, lambda x, p: p), atol=1e-12)
    lag = np.subtract.outer(np.arange(8), np.arange(8))
    # imaginary part is antisymmetric in j - k; the real part is the lone Nyquist sample
    np.testing.assert_allclose(k.imag, -k.imag.T, atol=1e-12)
    nyquist = np.where(np.abs(lag) <= 4, (-1.0) ** lag, 0.0) * (-4 * g.dp_conj) * g.dp_conj / (2 * math.pi)
    np.testing.assert_allclose(k.real, nyquist, atol=1e-12)


def test_momentum_kernel_differentiates(ref_grid):
    sigma = 0.7
    wf = gaussian_packet(ref_grid, 0.5, 0.0, sigma)
    k = weyl_kernel(sym(ref_grid, lambda x, p: p + 0 * x))
    x = ref_grid.position_axis()
    derivative = -(x - 0.5) / (2 * sigma**2) * wf.samples
    # rows whose partners beyond the folded lag range carry no amplitude
    rows = np.abs(x - 0.5) < 2.0
    np.testing.assert_allclose(k.apply(wf.samples)[rows], -1j * derivative[rows], atol=1e-9)


def test_smooth_symbol_against_brute_force():
    g = make_grid(1, 32, -8, 8)
    func = lambda x, p: np.exp(-(x**2) / 2 - p**2 / 2) * (1 + 0.5 * x)
    np.testing.assert_allclose(weyl_kernel(sym(g, func)).entries, brute_kernel(g, func), atol=1e-6)


@pytest.mark.parametrize("name", sorted(DECAYING))
def test_real_symbols_give_hermitian_kernels(name):
    k = weyl_kernel(sym(HS_GRID, DECAYING[name]))
    assert k.is_hermitian(1e-10)


def test_identity_round_trip():
    g = make_grid(1, 32, -4, 4)
    back = wigner_transform_operator(weyl_kernel(sym(g, lambda x, p: np.ones_like(x))))
    np.testing.assert_allclose(back.samples, 1.0, atol=1e-8)


def test_x_squared_round_trip():
    g = make_grid(1, 16, -4, 4)
    back = wigner_transform_operator(weyl_kernel(sym(g, lambda x, p: x**2 + 0 * p)))
    exact = sym(g, lambda x, p: x**2 + 0 * p, "wigner").samples
    inner = slice(2, 14)
    rel = np.abs(back.samples - exact)[inner] / np.maximum(np.abs(exact[inner]), 1e-300)
    assert np.nanmax(np.where(exact[inner] != 0, rel, 0)) < 1e-6


@pytest.mark.parametrize("name", sorted(DECAYING))
def test_decaying_round_trip(name):
    back = wigner_transform_operator(weyl_kernel(sym(HS_GRID, DECAYING[name])))
    exact = sym(HS_GRID, DECAYING[name], "wigner").samples
    inner = slice(16, 112)
    assert np.abs(back.samples - exact)[inner, inner].max() < 1e-6


def test_outer_product_kernel_gives_scaled_wigner(ref_grid, sigma0):
    wf = gaussian_packet(ref_grid, -1.0, 0.7, sigma0)
    aw = wigner_transform_operator(KernelMatrix.outer(wf))
    w = wigner_from_state(wf)
    np.testing.assert_allclose(aw.samples, 2 * math.pi * w.samples, atol=1e-8)


@pytest.mark.parametrize("name", sorted(DECAYING))
def test_hs_identity(name):
    lhs, rhs, rel = hs_identity_check(sym(HS_GRID, DECAYING[name]))
    assert rel < 1e-6
    assert lhs > 0 and rhs > 0


def test_hs_gaussian_value():
    # continuum value: (1/2pi) * int exp(-2x^2 - 2p^2) = 1/4
    lhs, rhs, _ = hs_identity_check(sym(HS_GRID, GAUSS))
    assert rhs == pytest.approx(0.25, abs=1e-12)
    assert lhs == pytest.approx(0.25, abs=1e-12)


def test_hs_zero_symbol():
    with pytest.raises(DegenerateSymbol):
        hs_identity_check(sym(HS_GRID, lambda x, p: 0 * x))


def test_kind_checks(ref_grid):
    with pytest.raises(ConfigError):
        weyl_kernel(sym(ref_grid, GAUSS, "wigner"))
    w = wigner_from_state(gaussian_packet(ref_grid, 0, 0, 1.0))
    with pytest.raises(ConfigError):
        expectation_via_phase_space(w, sym(ref_grid, GAUSS, "conjugate"))
    with pytest.raises(GridMismatch):
        expectation_via_phase_space(w, sym(HS_GRID, GAUSS, "wigner"))


def test_expectation_of_identity(ref_grid):
    w = wigner_from_state(ho_eigenstate(ref_grid, 3))
    one = sym(ref_grid, lambda x, p: np.ones_like(x), "wigner")
    assert expectation_via_phase_space(w, one) == pytest.approx(1.0, abs=1e-8)


def test_expectation_of_position(ref_grid, sigma0):
    wf = gaussian_packet(ref_grid, 2.0, 0.0, sigma0)
    # oracle: first moment of the continuum density by quadrature
    dens = lambda x: math.exp(-((x - 2.0) ** 2)) / math.sqrt(math.pi)
    mean, _ = integrate.quad(lambda x: x * dens(x), -np.inf, np.inf)
    value = expectation_via_phase_space(wigner_from_state(wf), sym(ref_grid, lambda x, p: x + 0 * p, "wigner"))
    assert value == pytest.approx(mean, abs=1e-6)
    assert value == pytest.approx(2.0, abs=1e-6)


@pytest.mark.parametrize("level", [0, 1, 2, 5])
def test_oscillator_energy(ref_grid, level):
    wf = ho_eigenstate(ref_grid, level)
    energy = sym(ref_grid, lambda x, p: (x**2 + p**2) / 2, "wigner")
    value = expectation_via_phase_space(wigner_from_state(wf), energy)
    # oracle: Hamiltonian applied to psi directly (spectral kinetic term)
    mwf = to_momentum(wf)
    p = ref_grid.momentum_axis(0, "conjugate")
    kinetic = np.sum(mwf.density() * p**2 / 2) * ref_grid.dp_conj
    potential = np.sum(wf.density() * ref_grid.position_axis() ** 2 / 2) * ref_grid.dx
    assert kinetic + potential == pytest.approx(level + 0.5, abs=1e-8)
    assert value == pytest.approx(level + 0.5, abs=1e-6)


def test_two_dimensional_round_trip():
    g = make_grid(2, 32, -8, 8)
    func = lambda x, p: np.exp(-(x[0] ** 2 + x[1] ** 2 + p[0] ** 2 + p[1] ** 2) / 2) * (1 + x[0] * p[1])
    f = Symbol.from_function(g, func)
    k = weyl_kernel(f)
    assert k.entries.shape == (1024, 1024)
    assert k.is_hermitian()
    _, _, rel = hs_identity_check(f)
    assert rel < 1e-6
    back = wigner_transform_operator(k)
    exact = Symbol.from_function(g, func, "wigner").samples
    inner = slice(6, 26)
    assert np.abs(back.samples - exact)[inner, inner, inner, inner].max() < 1e-6
