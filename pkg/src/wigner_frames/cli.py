"""Command-line front end.

Reports go to stdout as ``key=value`` lines; prose goes to stderr.

Exit codes: 0 success, 1 verification failure, 2 config error,
3 I/O or boundary error, 4 frame inconsistency.
"""
import argparse
import configparser
from dataclasses import dataclass, field, replace
import logging
import math
import os
import sys

import numpy as np

from . import export, verify
from . import frames as fr
from . import states
from .errors import BoundaryError, ConfigError, FrameInconsistent, WignerError
from .grid import make_grid
from .wigner import (
    marginal_momentum,
    marginal_position,
    negativity_volume,
    wigner_from_state,
)

log = logging.getLogger("wigner_frames")

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_IO, EXIT_FRAME = 0, 1, 2, 3, 4

STATE_KEYS = {
    "gaussian": {"x0", "p0", "sigma"},
    "ho": {"level", "mass", "omega"},
    "cat": {"separation", "sigma", "p0", "sign"},
}
FRAME_KEYS = {
    "translation": {"shift"},
    "galilean": {"velocity", "mass"},
    "acceleration": {"accel", "mass"},
    "affine": {"c", "a", "d", "b"},
}
FRAME_COMMON = {"kind", "t", "xi", "split"}
GRID_KEYS = {"n_dims", "points", "x_min", "x_max", "hbar"}
OUTPUT_KEYS = {"path", "format", "what"}
WHATS = ("wigner", "marginals", "phases", "report")


@dataclass
class JobSpec:
    grid: dict
    state: dict = None
    frame: dict = None
    output: dict = field(default_factory=dict)


def _numbers(text, name):
    try:
        values = [float(v) for v in str(text).replace(",", " ").split()]
    except ValueError:
        raise ConfigError(f"{name}: expected number(s), got {text!r}") from None
    if not values:
        raise ConfigError(f"{name}: empty value")
    return values[0] if len(values) == 1 else values


def _section(cp, name, allowed):
    if not cp.has_section(name):
        return None
    items = dict(cp.items(name))
    unknown = set(items) - allowed
    if unknown:
        raise ConfigError(f"[{name}] unknown key(s): {', '.join(sorted(unknown))}")
    return items


def load_spec(path):
    """Parse and validate an INI job file (no computation happens here)."""
    cp = configparser.ConfigParser(inline_comment_prefixes=(";",))
    try:
        with open(path) as fh:
            cp.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except configparser.Error as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from None
    unknown = set(cp.sections()) - {"grid", "state", "frame", "output"}
    if unknown:
        raise ConfigError(f"unknown section(s): {', '.join(sorted(unknown))}")

    grid = _section(cp, "grid", GRID_KEYS) or {}
    grid = {k: _numbers(v, f"grid.{k}") for k, v in grid.items()}

    state = cp.has_section("state") and dict(cp.items("state")) or None
    if state is not None:
        kind = state.pop("kind", None)
        if kind not in STATE_KEYS:
            raise ConfigError(f"[state] kind must be one of {sorted(STATE_KEYS)}, got {kind!r}")
        bad = set(state) - STATE_KEYS[kind]
        if bad:
            raise ConfigError(f"[state] kind={kind} does not take {', '.join(sorted(bad))}")
        state = {k: _numbers(v, f"state.{k}") for k, v in state.items()}
        state["kind"] = kind

    frame = cp.has_section("frame") and dict(cp.items("frame")) or None
    if frame is not None:
        kind = frame.pop("kind", None)
        if kind not in FRAME_KEYS:
            raise ConfigError(f"[frame] kind must be one of {sorted(FRAME_KEYS)}, got {kind!r}")
        bad = set(frame) - FRAME_KEYS[kind] - FRAME_COMMON
        if bad:
            raise ConfigError(f"[frame] kind={kind} does not take {', '.join(sorted(bad))}")
        missing = FRAME_KEYS[kind] - set(frame)
        if missing:
            raise ConfigError(f"[frame] kind={kind} needs {', '.join(sorted(missing))}")
        frame = {k: _numbers(v, f"frame.{k}") for k, v in frame.items()}
        frame["kind"] = kind

    output = _section(cp, "output", OUTPUT_KEYS) or {}
    if output.get("format", "bin") not in ("bin", "csv"):
        raise ConfigError(f"[output] format must be bin or csv, got {output['format']!r}")
    if output.get("what", "wigner") not in WHATS:
        raise ConfigError(f"[output] what must be one of {WHATS}, got {output['what']!r}")
    return JobSpec(grid, state, frame, output)


def build_grid(spec):
    p = dict(n_dims=1, points=256, x_min=-10.0, x_max=10.0, hbar=1.0)
    p.update(spec.grid)
    for key in ("n_dims", "points"):
        if p[key] != int(p[key]):
            raise ConfigError(f"grid.{key} must be an integer")
        p[key] = int(p[key])
    return make_grid(**p)


def build_state(spec, g):
    s = dict(spec.state)
    kind = s.pop("kind")
    if kind == "gaussian":
        return states.gaussian_packet(g, s.get("x0", 0.0), s.get("p0", 0.0), s.get("sigma", 1 / math.sqrt(2)))
    if kind == "ho":
        return states.ho_eigenstate(g, s.get("level", 0), s.get("mass", 1.0), s.get("omega", 1.0))
    sign = s.get("sign", 1.0)
    return states.cat_state(g, s.get("separation", 3.0), s.get("sigma", 1 / math.sqrt(2)), s.get("p0", 0.0), sign)


def build_frame(spec, g, xi=None):
    f = dict(spec.frame)
    kind = f.pop("kind")
    t = float(f.get("t", 0.0))
    if kind == "translation":
        frame = fr.translation_frame(g, f["shift"], t)
    elif kind == "galilean":
        frame = fr.galilean_frame(g, f["velocity"], f["mass"], t)
    elif kind == "acceleration":
        frame = fr.acceleration_frame(g, f["accel"], f["mass"], t)
    else:
        frame = fr.affine_frame(f["c"], f["a"], f["d"], f["b"], t, n_dims=g.n_dims)
    return replace(frame, xi=float(xi if xi is not None else f.get("xi", 0.0)), split=float(f.get("split", 0.0)))


def _report(**items):
    for key, value in items.items():
        if isinstance(value, float):
            value = f"{value:.6f}" if key.endswith("norm") else f"{value:.9g}"
        print(f"{key}={value}")


def _require(spec, *sections):
    for name in sections:
        if not getattr(spec, name):
            raise ConfigError(f"config is missing the [{name}] section")
    if not spec.output.get("path"):
        raise ConfigError("config is missing the [output] section (or --out)")


def _split_path(path):
    root, ext = os.path.splitext(path)
    return root, ext


def _write_outputs(spec, g, w, wf=None, frame=None, suffix=""):
    what = spec.output.get("what", "wigner")
    fmt = spec.output.get("format", "bin")
    path = spec.output.get("path")
    if path is None:
        raise ConfigError("no output path (set [output] path or --out)")
    root, ext = _split_path(path)
    target = f"{root}{suffix}{ext}"
    if what == "wigner":
        export.export_grid(w, target, fmt)
    elif what == "marginals":
        export.export_grid(marginal_position(w), f"{root}{suffix}.x{ext}", fmt, grid=g, axis_kind="x")
        export.export_grid(marginal_momentum(w), f"{root}{suffix}.p{ext}", fmt, grid=g, axis_kind="p")
    elif what == "phases":
        if frame is None:
            raise ConfigError("what=phases needs a [frame] section")
        alpha, beta = fr.solve_phases(frame)
        with open(target, "w") as fh:
            fh.write(_phase_text(alpha, beta))
    else:
        with open(target, "w") as fh:
            fh.write(_stats_text(w))
    log.info("wrote %s output to %s", what, target)


def _phase_text(alpha, beta):
    lines = [
        "alpha_linear=" + ",".join("%.17g" % v for v in alpha.linear),
        "alpha_constant=%.17g" % alpha.constant,
        "beta_linear=" + ",".join("%.17g" % v for v in beta.linear),
        "beta_constant=%.17g" % beta.constant,
    ]
    return "\n".join(lines) + "\n"


def _stats(w):
    return dict(norm=w.total(), min=float(w.samples.min()), max=float(w.samples.max()),
                negativity=negativity_volume(w), time_tag=float(w.time_tag))


def _stats_text(w):
    return "".join(f"{k}={v:.17g}\n" for k, v in _stats(w).items())


def _apply_overrides(spec, args):
    if getattr(args, "out", None):
        spec.output["path"] = args.out
    if getattr(args, "format", None):
        spec.output["format"] = args.format


def cmd_wigner(args):
    spec = load_spec(args.config)
    _apply_overrides(spec, args)
    _require(spec, "state")
    g = build_grid(spec)
    wf = build_state(spec, g)
    w = wigner_from_state(wf)
    _write_outputs(spec, g, w)
    _report(**_stats(w))
    return EXIT_OK


def cmd_transform(args):
    spec = load_spec(args.config)
    _apply_overrides(spec, args)
    _require(spec, "state", "frame")
    g = build_grid(spec)
    frame = build_frame(spec, g, args.xi)
    wf = build_state(spec, g)
    route = args.route
    if route == "all":
        results = fr.transform_all_routes(wf, frame)
    elif route == "position":
        results = {"position": fr.transform_wigner_position_route(wf, frame)}
    elif route == "momentum":
        results = {"momentum": fr.transform_wigner_momentum_route(wf, frame)}
    else:
        results = {"closed": fr.transform_wigner_closed_form(wigner_from_state(wf), frame)}
    alpha, beta = fr.solve_phases(frame)
    for name, w in results.items():
        _write_outputs(spec, g, w, wf, frame, suffix=f".{name}" if route == "all" else "")
        stats = _stats(w)
        _report(**{f"{name}_{k}" if route == "all" else k: v for k, v in stats.items()})
    if route == "all":
        short = {"position": "pos", "momentum": "mom", "closed": "closed"}
        for a, b in (("position", "momentum"), ("position", "closed"), ("momentum", "closed")):
            diff = float(np.abs(results[a].samples - results[b].samples).max())
            _report(**{f"max_diff_{short[a]}_{short[b]}": diff})
    print(_phase_text(alpha, beta), end="")
    return EXIT_OK


def cmd_export(args):
    spec = load_spec(args.config)
    _apply_overrides(spec, args)
    _require(spec, "state")
    g = build_grid(spec)
    wf = build_state(spec, g)
    w = wigner_from_state(wf)
    frame = None
    if spec.frame:
        frame = build_frame(spec, g, args.xi)
        route = args.route if args.route != "all" else "closed"
        if route == "position":
            w = fr.transform_wigner_position_route(wf, frame)
        elif route == "momentum":
            w = fr.transform_wigner_momentum_route(wf, frame)
        else:
            w = fr.transform_wigner_closed_form(w, frame)
    _write_outputs(spec, g, w, wf, frame)
    _report(**_stats(w))
    return EXIT_OK


def cmd_verify(args):
    checks = verify.run_suite(args.suite)
    for c in checks:
        print(c.line())
    failed = [c for c in checks if not c.passed]
    _report(checks=len(checks), failed=len(failed))
    if failed:
        log.error("%d of %d checks failed", len(failed), len(checks))
        return EXIT_VERIFY
    log.info("all %d checks passed", len(checks))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="wigner-frames", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def job(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="INI job file")
        p.add_argument("--out", help="output path (overrides [output] path)")
        p.add_argument("--format", choices=("csv", "bin"), help="output format")
        p.add_argument("--xi", type=float, default=None, help="phase constant shared by alpha and beta")
        return p

    job("wigner", "Wigner function of a state")
    p = job("transform", "Wigner function in a new reference frame")
    p.add_argument("--route", choices=("position", "momentum", "closed", "all"), default="all")
    p = job("export", "write a state's Wigner function, marginals, phases or report")
    p.add_argument("--route", choices=("position", "momentum", "closed", "all"), default="closed")
    p = sub.add_parser("verify", help="run built-in invariant suites")
    p.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    return parser


COMMANDS = {"wigner": cmd_wigner, "transform": cmd_transform, "export": cmd_export, "verify": cmd_verify}


class _StderrHandler(logging.StreamHandler):
    """Writes to whatever ``sys.stderr`` is at emit time."""

    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, _value):
        pass


def _configure_logging():
    if not any(isinstance(h, _StderrHandler) for h in log.handlers):
        handler = _StderrHandler()
        handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
        log.addHandler(handler)
        log.setLevel(logging.INFO)
        log.propagate = False


def main(argv=None):
    _configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except FrameInconsistent as exc:
        log.error("frame inconsistent: %s", exc)
        return EXIT_FRAME
    except ConfigError as exc:
        log.error("invalid config: %s", exc)
        return EXIT_CONFIG
    except BoundaryError as exc:
        log.error("boundary: %s", exc)
        return EXIT_IO
    except OSError as exc:
        log.error("I/O error: %s", exc)
        return EXIT_IO
    except WignerError as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
