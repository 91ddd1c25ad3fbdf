"""Acceptance criteria on the reference configuration (1D, N=256, [-10, 10], hbar=1).

Each test prints one ``criterion ... PASS|FAIL`` line; the lines are also
collected into the terminal summary.
"""
import math
import os
import subprocess
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np
import pytest
from scipy import integrate

from conftest import ACCEPTANCE_LINES
from wigner_frames import frames as fr
from wigner_frames import verify, weyl
from wigner_frames.grid import CONJUGATE, WIGNER
from wigner_frames.wigner import (
    marginal_momentum,
    marginal_position,
    momentum_density_on_wigner_axis,
    wigner_from_state,
)

REF = verify.reference_grid()
CORPUS = verify.state_corpus(REF)
ROUTE_STATES = verify.route_states(REF)
FRAMES = verify.frame_corpus(REF)
ROUTE_PAIRS = (("position", "momentum"), ("position", "closed"), ("momentum", "closed"))


def report(number, name, err, tol):
    ok = bool(np.isfinite(err) and err < tol)
    line = f"criterion {number:>2} {name}: err={err:.3e} tol={tol:.0e} {'PASS' if ok else 'FAIL'}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


@pytest.fixture(scope="module")
def corpus_wigners():
    return {name: wigner_from_state(wf) for name, wf in CORPUS.items()}


def quad_wigner(psi, x, p):
    """W(x, p) = (1/2pi) int conj(psi(x + y/2)) psi(x - y/2) e^{ipy} dy, hbar = 1."""
    re = lambda y: (np.conj(psi(x + y / 2)) * psi(x - y / 2) * np.exp(1j * p * y)).real
    val, _ = integrate.quad(re, -40, 40, limit=400, epsabs=1e-13)
    return val / (2 * math.pi)


def test_c01_normalization(corpus_wigners):
    assert len(corpus_wigners) == 6
    err = max(abs(w.total() - 1.0) for w in corpus_wigners.values())
    report(1, "normalization (6 states)", err, 1e-6)


def test_c02_marginals(corpus_wigners):
    err = 0.0
    for name, w in corpus_wigners.items():
        wf = CORPUS[name]
        err = max(err, float(np.abs(marginal_position(w) - wf.density()).max()))
        err = max(err, float(np.abs(marginal_momentum(w) - momentum_density_on_wigner_axis(wf)).max()))
    report(2, "marginals pointwise", err, 1e-6)


def test_c03_gaussian_analytic(corpus_wigners):
    sigma = verify.SQRT_HALF
    closed = lambda x, p: np.exp(-(x**2) / (2 * sigma**2) - 2 * sigma**2 * p**2) / math.pi
    psi = lambda x: (2 * math.pi * sigma**2) ** -0.25 * np.exp(-(x**2) / (4 * sigma**2))
    # the closed form itself is checked against direct quadrature at 10 points
    rng = np.random.default_rng(3)
    oracle_err = max(
        abs(quad_wigner(psi, x, p) - closed(x, p))
        for x, p in zip(rng.uniform(-2, 2, 10), rng.uniform(-2, 2, 10))
    )
    assert oracle_err < 1e-10
    x = REF.position_axis()[:, None]
    p = REF.momentum_axis(0, WIGNER)[None, :]
    err = float(np.abs(corpus_wigners["gaussian"].samples - closed(x, p)).max())
    report(3, "gaussian vs closed form", err, 1e-6)


def test_c04_ho1_origin(corpus_wigners):
    psi1 = lambda x: math.sqrt(2) * math.pi**-0.25 * x * np.exp(-(x**2) / 2)
    oracle = quad_wigner(psi1, 0.0, 0.0)
    assert abs(oracle + 1 / math.pi) < 1e-10
    w = corpus_wigners["ho1"]
    j = REF.points // 2
    assert REF.position_axis()[j] == 0.0 and REF.momentum_axis(0, WIGNER)[j] == 0.0
    report(4, "HO level-1 W(0,0) = -1/pi", abs(w.samples[j, j] - oracle), 1e-6)


def test_c05_hilbert_schmidt():
    g, funcs = verify.symbol_corpus()
    assert len(funcs) == 4
    err = max(weyl.hs_identity_check(weyl.Symbol.from_function(g, fn, CONJUGATE))[2] for fn in funcs.values())
    report(5, "Hilbert-Schmidt identity (4 symbols)", err, 1e-6)


def test_c06_weyl_round_trip():
    g, funcs = verify.symbol_corpus()
    inner = verify.interior(g.points)
    err = 0.0
    for fn in funcs.values():
        back = weyl.wigner_transform_operator(weyl.weyl_kernel(weyl.Symbol.from_function(g, fn, CONJUGATE)))
        exact = weyl.Symbol.from_function(g, fn, WIGNER).samples
        err = max(err, float(np.abs(back.samples - exact)[inner, inner].max()))
    report(6, "Weyl round trip (interior)", err, 1e-6)


def test_c07_phase_solutions():
    frames = dict(FRAMES)
    frames.update({f"affine{i}": f for i, f in enumerate(verify.random_affine_frames(5))})
    err = max(verify.phase_residual(f, count=100) for f in frames.values())
    # displayed coefficients, reproduced exactly
    a, V, m, t, acc = 1.3, 0.7, 2.0, 1.5, 0.9
    alpha, beta = fr.solve_phases(fr.translation_frame(REF, a))
    exact = alpha.linear == (0.0,) and alpha.constant == 0.0 and beta.linear == (a,)
    alpha, beta = fr.solve_phases(fr.galilean_frame(REF, V, m, t))
    exact &= alpha.linear == (-m * V,) and beta.linear == (V * t,)
    alpha, beta = fr.solve_phases(replace(fr.acceleration_frame(REF, acc, m, t), split=1.0 / 3.0))
    exact &= alpha.linear == (-m * acc * t,) and beta.linear == (acc * t**2 / 2,)
    exact &= abs(alpha.constant - m * acc**2 * t**3 / 6) < 1e-12
    report(7, "phase identity (8 frames x 100 points) + displayed coefficients", err if exact else np.inf, 1e-10)


@pytest.fixture(scope="module")
def all_routes():
    out = {}
    for sname, wf in ROUTE_STATES.items():
        w = wigner_from_state(wf)
        for fname, frame in FRAMES.items():
            out[(sname, fname)] = fr.transform_all_routes(wf, frame, w)
    return out


def test_c08_route_triangle(all_routes):
    assert FRAMES["translation"].a == (math.sqrt(2.0),)
    err = max(
        float(np.abs(res[a].samples - res[b].samples).max())
        for res in all_routes.values()
        for a, b in ROUTE_PAIRS
    )
    report(8, f"route triangle ({len(all_routes)} state-frame pairs)", err, 1e-6)


def test_c09_xi_split_invariance(all_routes):
    err = 0.0
    for (sname, fname), base in all_routes.items():
        for xi in (0.0, 1.7, -42.0):
            for split in (0.0, 1.0 / 3.0, 1.0):
                frame = replace(FRAMES[fname], xi=xi, split=split)
                wf = ROUTE_STATES[sname]
                pos = fr.transform_wigner_position_route(wf, frame).samples
                mom = fr.transform_wigner_momentum_route(wf, frame).samples
                err = max(err, float(np.abs(pos - base["position"].samples).max()))
                err = max(err, float(np.abs(mom - base["momentum"].samples).max()))
    report(9, "xi and constant-split invariance", err, 1e-12)


JOB = """\
[grid]
points = 256
x_min = -10
x_max = 10
[state]
kind = cat
separation = 3
sigma = 0.7071067811865476
[frame]
kind = translation
shift = 1.4142135623730951
[output]
path = {path}
format = bin
"""


def test_c10_determinism(tmp_path):
    blobs = {}
    for threads in ("1", "4"):
        for run in range(2):
            out = tmp_path / f"t{threads}_{run}.bin"
            cfg = tmp_path / f"job{threads}_{run}.ini"
            cfg.write_text(JOB.format(path=out))
            env = dict(os.environ, WIGNER_THREADS=threads)
            proc = subprocess.run(
                [sys.executable, "-m", "wigner_frames", "transform", "--config", str(cfg), "--route", "all"],
                env=env,
                capture_output=True,
                text=True,
                check=False,
            )
            assert proc.returncode == 0, proc.stderr
            for route in fr.ROUTES:
                blobs.setdefault(route, []).append(Path(f"{out.with_suffix('')}.{route}.bin").read_bytes())
    mismatches = sum(len(set(runs)) - 1 for runs in blobs.values())
    report(10, "byte-identical bin output, WIGNER_THREADS in {1, 4}", float(mismatches), 0.5)
