"""CSV and raw-binary serialisation of quaternion grids.

Binary layout (little-endian)::

    b"QSIG1" | n1 u32 | n2 u32 | d1 f64 | d2 f64 | n1*n2*4 f64, row-major

CSV layout: header ``x1,x2,q0,q1,q2,q3``, one row per grid point with the
first axis outermost. For spectra the coordinate columns hold frequencies.
"""

from __future__ import annotations

import io
import struct

import numpy as np

from .qsignal import GridSpec, QSignal, QSpectrum, module_norm

MAGIC = b"QSIG1"
_HEADER = struct.Struct("<5sIIdd")
CSV_HEADER = "x1,x2,q0,q1,q2,q3"
MAGNITUDE_HEADER = "xi1,xi2,modulus,module_norm"


class FormatError(ValueError):
    pass


def to_bytes(grid: GridSpec, samples: np.ndarray) -> bytes:
    head = _HEADER.pack(MAGIC, grid.n1, grid.n2, grid.d1, grid.d2)
    return head + np.ascontiguousarray(samples, dtype="<f8").tobytes()


def from_bytes(buf: bytes) -> tuple[GridSpec, np.ndarray]:
    if len(buf) < _HEADER.size:
        raise FormatError(f"file too short for QSIG1 header ({len(buf)} bytes)")
    magic, n1, n2, d1, d2 = _HEADER.unpack_from(buf, 0)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}, expected {MAGIC!r}")
    need = n1 * n2 * 4 * 8
    payload = buf[_HEADER.size:]
    if len(payload) != need:
        raise FormatError(f"payload is {len(payload)} bytes, expected {need} for {n1}x{n2}")
    grid = GridSpec(n1, n2, d1, d2)
    samples = np.frombuffer(payload, dtype="<f8").reshape(n1, n2, 4).astype(float)
    return grid, samples


def to_csv(grid: GridSpec, samples: np.ndarray) -> str:
    X1, X2 = grid.mesh()
    table = np.column_stack([X1.ravel(), X2.ravel(), samples.reshape(-1, 4)])
    out = io.StringIO()
    np.savetxt(out, table, fmt="%.17g", delimiter=",", header=CSV_HEADER, comments="")
    return out.getvalue()


def from_csv(text: str) -> tuple[GridSpec, np.ndarray]:
    lines = text.splitlines()
    if not lines or lines[0].strip().replace(" ", "") != CSV_HEADER:
        raise FormatError(f"CSV header must be {CSV_HEADER!r}")
    try:
        table = np.loadtxt(io.StringIO("\n".join(lines[1:])), delimiter=",", ndmin=2)
    except ValueError as exc:
        raise FormatError(f"malformed CSV body: {exc}") from None
    if table.shape[1] != 6 or table.shape[0] == 0:
        raise FormatError(f"expected 6 columns, got table of shape {table.shape}")
    x1 = table[:, 0]
    n2 = int(np.count_nonzero(x1 == x1[0]))
    if table.shape[0] % n2:
        raise FormatError("rows do not form a rectangular grid")
    n1 = table.shape[0] // n2
    a1 = x1.reshape(n1, n2)[:, 0]
    a2 = table[:n2, 1]
    d1 = float(a1[1] - a1[0]) if n1 > 1 else 1.0
    d2 = float(a2[1] - a2[0]) if n2 > 1 else 1.0
    grid = GridSpec(n1, n2, d1, d2)
    X1, X2 = grid.mesh()
    scale = max(np.max(np.abs(X1)), np.max(np.abs(X2)), 1.0)
    if not (np.allclose(X1.ravel(), table[:, 0], atol=1e-9 * scale)
            and np.allclose(X2.ravel(), table[:, 1], atol=1e-9 * scale)):
        raise FormatError("coordinates are not a uniform centred grid in row-major order")
    return grid, table[:, 2:].reshape(n1, n2, 4)


def _write(path, grid, samples):
    path = str(path)
    if path.endswith(".csv"):
        with open(path, "w", newline="") as fh:
            fh.write(to_csv(grid, samples))
    else:
        with open(path, "wb") as fh:
            fh.write(to_bytes(grid, samples))


def _read(path):
    with open(path, "rb") as fh:
        buf = fh.read()
    if buf.startswith(MAGIC):
        return from_bytes(buf)
    try:
        return from_csv(buf.decode("utf-8"))
    except UnicodeDecodeError:
        raise FormatError(f"{path}: neither QSIG1 binary nor UTF-8 CSV") from None


def save_signal(path, f: QSignal):
    """Write ``f`` as CSV if ``path`` ends in ``.csv``, else QSIG1 binary."""
    _write(path, f.grid, f.samples)


def load_signal(path) -> QSignal:
    grid, samples = _read(path)
    return QSignal(grid, samples)


def save_spectrum(path, S: QSpectrum):
    _write(path, S.grid, S.samples)


def load_spectrum(path) -> QSpectrum:
    """Read a spectrum file; component spectra are not stored, so none are attached."""
    grid, samples = _read(path)
    return QSpectrum(grid, samples)


def magnitude_csv(S: QSpectrum) -> str:
    """``|F|_Q`` and ``||F||_Q`` per frequency (the latter empty without components)."""
    X1, X2 = S.grid.mesh()
    mod = S.modulus().ravel()
    rows = [MAGNITUDE_HEADER]
    norm = module_norm(S).ravel() if S.has_components else None
    for k in range(mod.size):
        mn = "" if norm is None else "%.17g" % norm[k]
        rows.append("%.17g,%.17g,%.17g,%s" % (X1.flat[k], X2.flat[k], mod[k], mn))
    return "\n".join(rows) + "\n"
