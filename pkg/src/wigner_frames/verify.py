"""Built-in corpus and invariant suites run by ``wigner-frames verify``."""
from dataclasses import dataclass
import math

import numpy as np

from . import frames as fr
from . import states, weyl
from .grid import CONJUGATE, WIGNER, make_grid
from .wigner import (
    check_bound,
    marginal_momentum,
    marginal_position,
    momentum_density_on_wigner_axis,
    wigner_from_state,
)

SUITES = ("marginals", "hs", "routes", "phases")
SQRT_HALF = 1.0 / math.sqrt(2.0)


@dataclass
class Check:
    name: str
    err: float
    tol: float

    @property
    def passed(self):
        return bool(np.isfinite(self.err) and self.err < self.tol)

    def line(self):
        status = "pass" if self.passed else "FAIL"
        return f"check={self.name} err={self.err:.3e} tol={self.tol:.0e} result={status}"


def reference_grid():
    return make_grid(1, 256, -10.0, 10.0, 1.0)


def state_corpus(g):
    return {
        "gaussian": states.gaussian_packet(g, 0.0, 0.0, SQRT_HALF),
        "gaussian_moving": states.gaussian_packet(g, 1.0, 1.5, 0.8),
        "ho0": states.ho_eigenstate(g, 0),
        "ho1": states.ho_eigenstate(g, 1),
        "ho2": states.ho_eigenstate(g, 2),
        "cat": states.cat_state(g, 3.0, SQRT_HALF),
    }


def route_states(g):
    c = state_corpus(g)
    return {k: c[k] for k in ("gaussian", "gaussian_moving", "ho1", "cat")}


def frame_corpus(g):
    return {
        "translation": fr.translation_frame(g, math.sqrt(2.0)),
        "galilean": fr.galilean_frame(g, 0.7, 1.0, 1.3),
        "acceleration": fr.acceleration_frame(g, 0.9, 1.2, 1.1),
    }


def symbol_corpus():
    """Square-integrable test symbols on the HS reference grid."""
    g = make_grid(1, 128, -12.0, 12.0, 1.0)
    gauss = lambda x, p: np.exp(-x[0] ** 2 - p[0] ** 2)
    funcs = {
        "gaussian": gauss,
        "x_gaussian": lambda x, p: x[0] * gauss(x, p),
        "xp_gaussian": lambda x, p: x[0] * p[0] * gauss(x, p),
        "quartic_gaussian": lambda x, p: (x[0] ** 4 - p[0] ** 2 + 1) * gauss(x, p),
    }
    return g, funcs


def interior(n, margin=None):
    margin = n // 8 if margin is None else margin
    return slice(margin, n - margin)


def run_marginals():
    g = reference_grid()
    out = []
    for name, wf in state_corpus(g).items():
        w = wigner_from_state(wf)
        out.append(Check(f"marginals/{name}/norm", abs(w.total() - 1.0), 1e-6))
        out.append(Check(f"marginals/{name}/position",
                         float(np.abs(marginal_position(w) - wf.density()).max()), 1e-6))
        out.append(Check(f"marginals/{name}/momentum",
                         float(np.abs(marginal_momentum(w) - momentum_density_on_wigner_axis(wf)).max()), 1e-6))
        out.append(Check(f"marginals/{name}/purity", abs(w.purity() - 1.0), 1e-4))
        out.append(Check(f"marginals/{name}/bound", 0.0 if check_bound(w) else 1.0, 0.5))
    return out


def run_hs():
    g, funcs = symbol_corpus()
    inner = interior(g.points)
    out = []
    for name, fn in funcs.items():
        f = weyl.Symbol.from_function(g, fn, CONJUGATE)
        _, _, rel = weyl.hs_identity_check(f)
        out.append(Check(f"hs/{name}/identity", rel, 1e-6))
        back = weyl.wigner_transform_operator(weyl.weyl_kernel(f))
        exact = weyl.Symbol.from_function(g, fn, WIGNER)
        err = np.abs(back.samples - exact.samples)[inner, inner].max()
        out.append(Check(f"hs/{name}/roundtrip", float(err), 1e-6))
    return out


def run_routes():
    g = reference_grid()
    out = []
    pairs = (("position", "momentum"), ("position", "closed"), ("momentum", "closed"))
    for sname, wf in route_states(g).items():
        w = wigner_from_state(wf)
        for fname, frame in frame_corpus(g).items():
            res = fr.transform_all_routes(wf, frame, w)
            for a, b in pairs:
                err = float(np.abs(res[a].samples - res[b].samples).max())
                out.append(Check(f"routes/{sname}/{fname}/{a}-{b}", err, 1e-6))
    return out


def random_affine_frames(count=5, seed=7):
    rng = np.random.default_rng(seed)
    result = []
    for _ in range(count):
        c = rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0])
        result.append(fr.affine_frame(c, rng.uniform(-3, 3), 1.0 / c, rng.uniform(-3, 3), rng.uniform(0, 2)))
    return result


def phase_residual(frame, count=100, seed=11):
    """Largest identity residual at ``count`` random (x, p) pairs."""
    alpha, beta = fr.solve_phases(frame)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(count):
        x = rng.uniform(-10, 10, frame.n_dims)
        p = rng.uniform(-10, 10, frame.n_dims)
        worst = max(worst, abs(fr.phase_identity_residual(frame, alpha, beta, x, p)))
    return worst


def run_phases():
    g = reference_grid()
    out = []
    named = dict(frame_corpus(g))
    for i, f in enumerate(random_affine_frames()):
        named[f"affine{i}"] = f
    for name, frame in named.items():
        out.append(Check(f"phases/{name}/identity", phase_residual(frame), 1e-10))

    a, V, m, t, acc = 1.3, 0.7, 2.0, 1.5, 0.9
    alpha, beta = fr.solve_phases(fr.translation_frame(g, a))
    out.append(Check("phases/translation/alpha", abs(alpha.linear[0]) + abs(alpha.constant), 1e-15))
    out.append(Check("phases/translation/beta", abs(beta.linear[0] - a) + abs(beta.constant), 1e-15))
    alpha, beta = fr.solve_phases(fr.galilean_frame(g, V, m, t))
    out.append(Check("phases/galilean/alpha_linear", abs(alpha.linear[0] + m * V), 1e-15))
    out.append(Check("phases/galilean/beta_linear", abs(beta.linear[0] - V * t), 1e-15))
    frame = fr.acceleration_frame(g, acc, m, t)
    alpha, beta = fr.solve_phases(frame)
    out.append(Check("phases/acceleration/alpha_linear", abs(alpha.linear[0] + m * acc * t), 1e-15))
    out.append(Check("phases/acceleration/beta_linear", abs(beta.linear[0] - acc * t**2 / 2), 1e-15))
    from dataclasses import replace

    alpha, beta = fr.solve_phases(replace(frame, split=1.0 / 3.0))
    out.append(Check("phases/acceleration/alpha_constant", abs(alpha.constant - m * acc**2 * t**3 / 6), 1e-12))
    out.append(Check("phases/acceleration/beta_constant", abs(beta.constant + m * acc**2 * t**3 / 3), 1e-12))
    return out


RUNNERS = {
    "marginals": run_marginals,
    "hs": run_hs,
    "routes": run_routes,
    "phases": run_phases,
}


def run_suite(name):
    if name == "all":
        return [c for s in SUITES for c in RUNNERS[s]()]
    return RUNNERS[name]()
