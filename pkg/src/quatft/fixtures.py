"""Built-in signals addressable by name from the command line.

``gaussian[:alpha]``, ``delta[:a+bi+cj+dk]``, ``polygauss:m,n,alpha``,
``noise:seed``, ``real-noise:seed`` and ``zero``. Anything else is treated
as a file path.
"""

from __future__ import annotations

import os

import numpy as np

from .formats import load_signal
from .qft import PolyGauss, delta
from .qsignal import GridSpec, QSignal, load_ppm_as_pure_quaternion
from .quaternion import parse_quaternion

DEFAULT_GRID = GridSpec(64, 64, 0.1875, 0.1875)
NAMES = ("gaussian", "delta", "polygauss", "noise", "real-noise", "zero")


def is_fixture(spec: str) -> bool:
    return spec.split(":", 1)[0] in NAMES


def noise(grid: GridSpec, seed: int, real: bool = False) -> QSignal:
    rng = np.random.default_rng(seed)
    s = rng.standard_normal(grid.shape + (4,))
    if real:
        s[..., 1:] = 0.0
    return QSignal(grid, s)


def resolve(spec: str):
    """Closed-form fixtures come back as PolyGauss; the rest need a grid (see :func:`sample`)."""
    name, _, arg = spec.partition(":")
    if name == "gaussian":
        return PolyGauss.gaussian(float(arg) if arg else 1.0)
    if name == "zero":
        return PolyGauss.zero()
    if name == "polygauss":
        try:
            m, n, alpha = arg.split(",")
            return PolyGauss.monomial(int(m), int(n), float(alpha))
        except ValueError:
            raise ValueError(f"expected polygauss:m,n,alpha, got {spec!r}") from None
    return None


def sample(spec: str, grid: GridSpec | None = None) -> QSignal:
    """Materialise ``spec`` (fixture name or file) as a sampled signal."""
    grid = grid or DEFAULT_GRID
    closed = resolve(spec)
    if closed is not None:
        return closed.sample(grid)
    name, _, arg = spec.partition(":")
    if name == "delta":
        value = parse_quaternion(arg).to_array() if arg else (1.0, 0.0, 0.0, 0.0)
        return delta(grid, value)
    if name in ("noise", "real-noise"):
        return noise(grid, int(arg or 0), real=(name == "real-noise"))
    if not os.path.exists(spec):
        raise FileNotFoundError(f"no fixture or file named {spec!r}; fixtures: {', '.join(NAMES)}")
    if spec.lower().endswith(".ppm"):
        return load_ppm_as_pure_quaternion(spec)
    return load_signal(spec)
