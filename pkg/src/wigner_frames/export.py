"""CSV and binary writers/readers for Wigner grids and marginal vectors.

Binary layout (little-endian)::

    b"WIGR"  u32 version=1  u32 n_dims  u32 N (per axis)
    f64 hbar  f64 time_tag
    f64 x_min, dx, p_min, dp (per axis)
    f64 samples, row-major
"""
import struct

import numpy as np

from .grid import WIGNER
from .wigner import WignerGrid

MAGIC = b"WIGR"
VERSION = 1


def header_size(n_dims):
    return 4 + 4 + 4 + 4 * n_dims + 8 + 8 + 32 * n_dims


def _fmt(v):
    return "%.17g" % v


def write_bin(path, grid, samples, time_tag=0.0):
    nd = grid.n_dims
    parts = [
        MAGIC,
        struct.pack("<II", VERSION, nd),
        struct.pack("<" + "I" * nd, *grid.shape),
        struct.pack("<dd", grid.hbar, time_tag),
    ]
    for _ in range(nd):
        parts.append(struct.pack("<dddd", grid.x_min, grid.dx, grid.p_min(WIGNER), grid.dp_wig))
    parts.append(np.ascontiguousarray(samples, dtype="<f8").tobytes(order="C"))
    with open(path, "wb") as fh:
        fh.write(b"".join(parts))


def read_bin(path):
    """Return ``(header dict, flat float64 samples)``."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[:4] != MAGIC:
        raise ValueError(f"{path}: not a WIGR file")
    version, nd = struct.unpack_from("<II", blob, 4)
    off = 12
    shape = struct.unpack_from("<" + "I" * nd, blob, off)
    off += 4 * nd
    hbar, time_tag = struct.unpack_from("<dd", blob, off)
    off += 16
    axes = []
    for _ in range(nd):
        axes.append(struct.unpack_from("<dddd", blob, off))
        off += 32
    samples = np.frombuffer(blob, dtype="<f8", offset=off)
    header = dict(version=version, n_dims=nd, shape=shape, hbar=hbar, time_tag=time_tag, axes=axes)
    return header, samples


def _column_names(nd, names):
    if nd == 1:
        return list(names)
    return [f"{n}{i}" for n in names for i in range(nd)]


def write_csv_wigner(path, w):
    g = w.grid
    nd = g.n_dims
    x = g.position_axis(0)
    p = g.momentum_axis(0, WIGNER)
    mesh = np.meshgrid(*([x] * nd + [p] * nd), indexing="ij")
    cols = [m.reshape(-1) for m in mesh] + [w.samples.reshape(-1)]
    header = "# " + " ".join(_column_names(nd, ("x", "p")) + ["W"])
    _write_columns(path, header, cols)


def write_csv_vector(path, grid, values, axis_kind="x"):
    """Marginal or other density on positions (``"x"``) or Wigner momenta (``"p"``)."""
    nd = grid.n_dims
    ax = grid.position_axis(0) if axis_kind == "x" else grid.momentum_axis(0, WIGNER)
    mesh = np.meshgrid(*([ax] * nd), indexing="ij")
    cols = [m.reshape(-1) for m in mesh] + [np.asarray(values).reshape(-1)]
    header = "# " + " ".join(_column_names(nd, (axis_kind,)) + ["M"])
    _write_columns(path, header, cols)


def _write_columns(path, header, cols):
    lines = [header]
    for row in zip(*cols):
        lines.append(",".join(_fmt(v) for v in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_csv(path):
    return np.loadtxt(path, delimiter=",", comments="#", ndmin=2)


def export_grid(data, path, fmt="bin", grid=None, axis_kind="x"):
    """Write a :class:`WignerGrid` or a marginal vector (then ``grid`` is required)."""
    if isinstance(data, WignerGrid):
        if fmt == "csv":
            write_csv_wigner(path, data)
        else:
            write_bin(path, data.grid, data.samples, data.time_tag)
        return
    if grid is None:
        raise ValueError("exporting a vector needs its grid")
    if fmt == "csv":
        write_csv_vector(path, grid, data, axis_kind)
    else:
        write_bin(path, grid, np.asarray(data, dtype=float))
