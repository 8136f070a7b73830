"""Sampled quaternion-valued functions on uniform centred 2D grids."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quaternion import left_i, qabs, right_j


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid ``x = (m - n//2) * d``, ``m = 0..n-1``, per axis.

    The origin is always a grid point (index ``n//2``). The dual grid has
    the same counts and spacing ``1 / (n * d)``.
    """

    n1: int
    n2: int
    d1: float = 1.0
    d2: float = 1.0

    def __post_init__(self):
        if int(self.n1) != self.n1 or int(self.n2) != self.n2 or self.n1 < 1 or self.n2 < 1:
            raise ValueError(f"grid counts must be positive integers, got {self.n1}x{self.n2}")
        if not (self.d1 > 0 and self.d2 > 0):
            raise ValueError(f"grid spacing must be positive, got {self.d1}, {self.d2}")
        object.__setattr__(self, "n1", int(self.n1))
        object.__setattr__(self, "n2", int(self.n2))
        object.__setattr__(self, "d1", float(self.d1))
        object.__setattr__(self, "d2", float(self.d2))

    @classmethod
    def centered_box(cls, n1: int, n2: int, half_width: float) -> "GridSpec":
        """Grid covering ``[-half_width, half_width)`` on both axes."""
        return cls(n1, n2, 2.0 * half_width / n1, 2.0 * half_width / n2)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n1, self.n2)

    @property
    def cell_area(self) -> float:
        return self.d1 * self.d2

    @property
    def extent(self) -> tuple[float, float]:
        return (self.n1 * self.d1, self.n2 * self.d2)

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        x1 = (np.arange(self.n1) - self.n1 // 2) * self.d1
        x2 = (np.arange(self.n2) - self.n2 // 2) * self.d2
        return x1, x2

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        x1, x2 = self.axes()
        return np.meshgrid(x1, x2, indexing="ij")

    def radius(self) -> np.ndarray:
        X1, X2 = self.mesh()
        return np.hypot(X1, X2)

    def dual(self) -> "GridSpec":
        return GridSpec(self.n1, self.n2, 1.0 / (self.n1 * self.d1), 1.0 / (self.n2 * self.d2))

    def inscribed_radius(self) -> float:
        """Largest R such that the disc |x| <= R lies inside the sampled box."""
        return min((self.n1 - 1 - self.n1 // 2) * self.d1, (self.n2 - 1 - self.n2 // 2) * self.d2)


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class QSignal:
    """Quaternion samples ``f(x)`` on ``grid``; ``samples`` has shape ``(n1, n2, 4)``."""

    grid: GridSpec
    samples: np.ndarray

    def __post_init__(self):
        s = _frozen(self.samples)
        if s.shape != (self.grid.n1, self.grid.n2, 4):
            raise ValueError(f"samples shape {s.shape} does not match grid {self.grid.shape}")
        object.__setattr__(self, "samples", s)

    @classmethod
    def from_components(cls, grid: GridSpec, f0, f1=None, f2=None, f3=None) -> "QSignal":
        """Build ``f0 + i f1 + j f2 + k f3`` from real arrays (missing ones are zero)."""
        zero = np.zeros(grid.shape)
        parts = [zero if c is None else np.broadcast_to(np.asarray(c, float), grid.shape) for c in (f0, f1, f2, f3)]
        return cls(grid, np.stack(parts, axis=-1))

    @classmethod
    def zeros(cls, grid: GridSpec) -> "QSignal":
        return cls(grid, np.zeros(grid.shape + (4,)))

    def components(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return tuple(np.array(self.samples[..., m]) for m in range(4))

    def modulus(self) -> np.ndarray:
        return qabs(self.samples)

    def is_real(self) -> bool:
        return not np.any(self.samples[..., 1:])

    def __add__(self, other: "QSignal") -> "QSignal":
        _check_same_grid(self.grid, other.grid)
        return QSignal(self.grid, self.samples + other.samples)

    def __sub__(self, other: "QSignal") -> "QSignal":
        _check_same_grid(self.grid, other.grid)
        return QSignal(self.grid, self.samples - other.samples)

    def scale(self, lam: float) -> "QSignal":
        return QSignal(self.grid, lam * self.samples)


@dataclass(frozen=True, eq=False)
class QSpectrum:
    """Quaternion transform samples on the dual grid, stored centred.

    ``components``, when present, has shape ``(4, n1, n2, 4)`` and holds the
    transforms of the four real parts ``f0..f3`` of the source signal. The
    full spectrum recombines them as
    ``F{f0} + i F{f1} + F{f2} j + i F{f3} j``.
    """

    grid: GridSpec
    samples: np.ndarray
    components: np.ndarray | None = None

    def __post_init__(self):
        s = _frozen(self.samples)
        if s.shape != (self.grid.n1, self.grid.n2, 4):
            raise ValueError(f"samples shape {s.shape} does not match grid {self.grid.shape}")
        object.__setattr__(self, "samples", s)
        if self.components is not None:
            c = _frozen(self.components)
            if c.shape != (4,) + s.shape:
                raise ValueError(f"component spectra shape {c.shape} != {(4,) + s.shape}")
            object.__setattr__(self, "components", c)

    @property
    def has_components(self) -> bool:
        return self.components is not None

    def modulus(self) -> np.ndarray:
        return qabs(self.samples)


def component_split(f: QSignal) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Real parts ``f0..f3`` with ``f = f0 + i f1 + j f2 + k f3``."""
    return f.components()


def recombine(components) -> np.ndarray:
    """``T0 + i T1 + T2 j + i T3 j`` for a stack of four quaternion arrays."""
    t0, t1, t2, t3 = components
    return t0 + left_i(t1) + right_j(t2) + left_i(right_j(t3))


def _check_same_grid(a: GridSpec, b: GridSpec):
    if a != b:
        raise ValueError(f"grid mismatch: {a} vs {b}")


# ---------------------------------------------------------------------------
# norms

def l1_norm(f: QSignal) -> float:
    """Riemann sum of ``|f(x)|_Q``."""
    return float(np.sum(f.modulus()) * f.grid.cell_area)


def l2_norm(f: QSignal) -> float:
    return float(np.sqrt(np.sum(f.samples ** 2) * f.grid.cell_area))


class MissingComponentsError(RuntimeError):
    pass


def module_norm(S: QSpectrum) -> np.ndarray:
    """Pointwise ``||F{f}(y)||_Q = sqrt(sum_m |F{f_m}(y)|_Q^2)``."""
    if S.components is None:
        raise MissingComponentsError(
            "spectrum has no component spectra; recompute the transform with keep_components=True"
        )
    return np.sqrt(np.sum(S.components ** 2, axis=(0, -1)))


def module_l2_norm(S: QSpectrum) -> float:
    """Grid L2 aggregate of :func:`module_norm`."""
    return float(np.sqrt(np.sum(module_norm(S) ** 2) * S.grid.cell_area))


# ---------------------------------------------------------------------------
# PPM

class PPMParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _ppm_token(buf: bytes, pos: int) -> tuple[bytes, int, int]:
    """Next header token as ``(token, start, end)``, skipping whitespace and comments."""
    n = len(buf)
    while pos < n:
        c = buf[pos:pos + 1]
        if c == b"#":
            while pos < n and buf[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
        elif c.isspace():
            pos += 1
        else:
            break
    start = pos
    while pos < n and not buf[pos:pos + 1].isspace() and buf[pos:pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise PPMParseError("unexpected end of header", start)
    return buf[start:pos], start, pos


def parse_ppm(buf: bytes) -> tuple[np.ndarray, int]:
    """Decode a binary P6 image into ``(pixels, maxval)``; pixels is ``(height, width, 3)`` uint8."""
    magic, start, pos = _ppm_token(buf, 0)
    if magic != b"P6":
        raise PPMParseError(f"expected magic P6, got {magic[:8]!r}", start)
    fields, starts = [], []
    for name in ("width", "height", "maxval"):
        tok, start, pos = _ppm_token(buf, pos)
        if not tok.isdigit():
            raise PPMParseError(f"invalid {name} {tok[:16]!r}", start)
        fields.append(int(tok))
        starts.append(start)
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise PPMParseError(f"empty image {width}x{height}", starts[0] if width < 1 else starts[1])
    if not 0 < maxval < 256:
        raise PPMParseError(f"only 8-bit PPM supported, maxval={maxval}", starts[2])
    if pos >= len(buf) or not buf[pos:pos + 1].isspace():
        raise PPMParseError("missing whitespace after maxval", pos)
    pos += 1
    need = width * height * 3
    payload = buf[pos:pos + need]
    if len(payload) < need:
        raise PPMParseError(f"truncated payload: need {need} bytes, have {len(payload)}", pos + len(payload))
    img = np.frombuffer(payload, dtype=np.uint8).reshape(height, width, 3)
    if np.any(img > maxval):
        raise PPMParseError(f"sample exceeds maxval {maxval}", pos)
    return img, maxval


def load_ppm_as_pure_quaternion(path, spacing: tuple[float, float] = (1.0, 1.0)) -> QSignal:
    """Read a P6 file as ``i r + j g + k b`` with channels scaled to [0, 1].

    Row index maps to the first grid axis, column index to the second.
    """
    with open(path, "rb") as fh:
        buf = fh.read()
    img, maxval = parse_ppm(buf)
    h, w, _ = img.shape
    grid = GridSpec(h, w, *spacing)
    rgb = img.astype(float) / maxval
    return QSignal.from_components(grid, None, rgb[..., 0], rgb[..., 1], rgb[..., 2])


def write_ppm(path, rgb: np.ndarray):
    rgb = np.asarray(rgb, dtype=np.uint8)
    h, w, _ = rgb.shape
    with open(path, "wb") as fh:
        fh.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
        fh.write(rgb.tobytes())
