"""Two-sided quaternion Fourier transform on centred grids.

Convention::

    F{f}(xi) = sum_x exp(-i 2 pi xi1 x1) f(x) exp(-j 2 pi xi2 x2) dx1 dx2

with the left kernel in ``i`` and the right kernel in ``j``. Spectra live
on the dual grid (spacing ``1 / (n d)``), stored centred like the signals.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np
import scipy.fft
from numpy.polynomial import polynomial as npoly

from .qsignal import GridSpec, QSignal, QSpectrum, _check_same_grid, recombine
from .quaternion import qmul

_UNITS = np.eye(4)


def _workers() -> int | None:
    value = os.environ.get("QFT_THREADS")
    if not value:
        return None
    n = int(value)
    if n < 1:
        raise ValueError(f"QFT_THREADS must be >= 1, got {value!r}")
    return n


# ---------------------------------------------------------------------------
# reference oracle

def _direct(samples: np.ndarray, grid: GridSpec, out_grid: GridSpec, sign: float) -> np.ndarray:
    x1, x2 = grid.axes()
    xi1, xi2 = out_grid.axes()
    a = 2.0 * np.pi * np.outer(xi1, x1)
    b = 2.0 * np.pi * np.outer(xi2, x2)
    zero_a = np.zeros_like(a)
    zero_b = np.zeros_like(b)
    left = np.stack([np.cos(a), sign * np.sin(a), zero_a, zero_a], axis=-1)     # (k1, m1, 4)
    right = np.stack([np.cos(b), zero_b, sign * np.sin(b), zero_b], axis=-1)    # (k2, m2, 4)
    # exp(.. i ..) * f, summed over x1; exponentials stay on their own side of f
    t = qmul(left[:, :, None, :], samples[None, :, :, :]).sum(axis=1)          # (k1, m2, 4)
    out = qmul(t[:, None, :, :], right[None, :, :, :]).sum(axis=2)             # (k1, k2, 4)
    return out * grid.cell_area


def qft_direct(f: QSignal) -> QSpectrum:
    """Reference transform by direct summation of the kernel products.

    Each term is formed as ``exp(-i a) * f(x) * exp(-j b)`` with full
    quaternion products. Cost is cubic in the side length; use it as an
    oracle for :func:`qft_fast`, not for production.
    """
    dual = f.grid.dual()
    samples = _direct(f.samples, f.grid, dual, -1.0)
    comps = np.zeros((4,) + samples.shape)
    for m in range(4):
        embedded = np.zeros_like(f.samples)
        embedded[..., 0] = f.samples[..., m]
        comps[m] = _direct(embedded, f.grid, dual, -1.0)
    return QSpectrum(dual, samples, comps)


# ---------------------------------------------------------------------------
# fast path

def _centered_dft(r: np.ndarray, inverse: bool) -> np.ndarray:
    axes = (-2, -1)
    shifted = scipy.fft.ifftshift(r, axes=axes)
    if inverse:
        n = r.shape[-2] * r.shape[-1]
        g = scipy.fft.ifft2(shifted, axes=axes, workers=_workers()) * n
    else:
        g = scipy.fft.fft2(shifted, axes=axes, workers=_workers())
    return scipy.fft.fftshift(g, axes=axes)


def _flip_second_axis(g: np.ndarray) -> np.ndarray:
    """Centred array evaluated at ``-xi2`` (periodic, so Nyquist maps to itself)."""
    n2 = g.shape[-1]
    idx = (2 * (n2 // 2) - np.arange(n2)) % n2
    return g[..., idx]


def _two_sided_real(r: np.ndarray, inverse: bool) -> np.ndarray:
    """Unscaled two-sided transform of real fields ``r`` (leading axes batch).

    Writing a = 2 pi xi1 x1, b = 2 pi xi2 x2 and s = -1 (forward) or +1, the
    kernel expands as cos a cos b + s i sin a cos b + s j cos a sin b
    + k sin a sin b. One complex FFT G(xi1, xi2) of ``r`` and its mirror
    G(xi1, -xi2) separate the four parity classes:
    E = (G + G~)/2 carries the even-in-x2 part, D = (G - G~)/2 the odd part.
    """
    g = _centered_dft(np.asarray(r, dtype=float), inverse)
    gm = _flip_second_axis(g)
    even = 0.5 * (g + gm)
    odd = 0.5 * (g - gm)
    return np.stack([even.real, even.imag, odd.imag, -odd.real], axis=-1)


def qft_fast(f: QSignal, keep_components: bool = True) -> QSpectrum:
    """Two-sided QFT via four batched complex 2D FFTs.

    The signal is split as ``f0 + i f1 + f2 j + i f3 j`` (valid because
    ``j f2 = f2 j`` and ``k = ij`` for real fields); since the left kernel
    commutes with ``i`` and the right one with ``j``, each real field is
    transformed on its own and the results are recombined with the same
    placement.
    """
    dual = f.grid.dual()
    fields = np.moveaxis(f.samples, -1, 0)
    comps = _two_sided_real(fields, inverse=False) * f.grid.cell_area
    samples = recombine(comps)
    return QSpectrum(dual, samples, comps if keep_components else None)


def qft_inverse(S: QSpectrum) -> QSignal:
    """Inverse transform with kernels ``exp(+i a)`` on the left, ``exp(+j b)`` on the right."""
    grid = S.grid.dual()
    fields = np.moveaxis(S.samples, -1, 0)
    comps = _two_sided_real(fields, inverse=True) * S.grid.cell_area
    return QSignal(grid, recombine(comps))


def qft_inverse_direct(S: QSpectrum) -> QSignal:
    grid = S.grid.dual()
    return QSignal(grid, _direct(S.samples, S.grid, grid, 1.0))


# ---------------------------------------------------------------------------
# convolution

_MULT_TABLE = np.array([[qmul(_UNITS[a], _UNITS[b]) for b in range(4)] for a in range(4)])


def convolve(f: QSignal, g: QSignal) -> QSignal:
    """Circular convolution ``(f*g)(x) = sum_t f(t) g(x - t) d1 d2`` (product order f then g)."""
    _check_same_grid(f.grid, g.grid)
    axes = (-2, -1)
    fa = scipy.fft.fft2(scipy.fft.ifftshift(np.moveaxis(f.samples, -1, 0), axes=axes), axes=axes,
                        workers=_workers())
    gb = scipy.fft.fft2(scipy.fft.ifftshift(np.moveaxis(g.samples, -1, 0), axes=axes), axes=axes,
                        workers=_workers())
    pair = scipy.fft.ifft2(fa[:, None] * gb[None, :], axes=axes, workers=_workers()).real
    pair = scipy.fft.fftshift(pair, axes=axes)                       # (a, b, n1, n2)
    out = np.einsum("abc,abxy->xyc", _MULT_TABLE, pair)
    return QSignal(f.grid, out * f.grid.cell_area)


def delta(grid: GridSpec, value=(1.0, 0.0, 0.0, 0.0)) -> QSignal:
    """Discrete delta at the origin with unit integral times ``value``."""
    s = np.zeros(grid.shape + (4,))
    s[grid.n1 // 2, grid.n2 // 2] = np.asarray(value, dtype=float) / grid.cell_area
    return QSignal(grid, s)


# ---------------------------------------------------------------------------
# Hermite factors and the polynomial x Gaussian family

def hermite_factor(m: int) -> np.ndarray:
    """Coefficients (lowest first) of P_m with d^m/dx^m exp(-pi x^2) = exp(-pi x^2) P_m(x)."""
    if m < 0:
        raise ValueError(f"order must be >= 0, got {m}")
    p = np.array([1.0])
    for _ in range(m):
        p = npoly.polyadd(npoly.polymulx(-2.0 * np.pi * p), npoly.polyder(p))
    return p


def _degree(coeffs: np.ndarray) -> int:
    idx = np.argwhere(coeffs != 0)
    if idx.size == 0:
        return -1
    return int(idx[:, -2:].sum(axis=1).max())


@dataclass(frozen=True, eq=False)
class PolyGauss:
    """Real function ``P(x) exp(-pi alpha |x|^2)`` with ``P = sum c[m, n] x1^m x2^n``."""

    coeffs: np.ndarray
    alpha: float = 1.0

    def __post_init__(self):
        c = np.atleast_2d(np.array(self.coeffs, dtype=float))
        if c.ndim != 2:
            raise ValueError("coefficients must form a 2D array c[m, n]")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "alpha", float(self.alpha))

    @classmethod
    def monomial(cls, m: int, n: int, alpha: float = 1.0, scale: float = 1.0) -> "PolyGauss":
        c = np.zeros((m + 1, n + 1))
        c[m, n] = scale
        return cls(c, alpha)

    @classmethod
    def gaussian(cls, alpha: float = 1.0) -> "PolyGauss":
        return cls.monomial(0, 0, alpha)

    @classmethod
    def zero(cls, alpha: float = 1.0) -> "PolyGauss":
        return cls(np.zeros((1, 1)), alpha)

    @property
    def degree(self) -> int:
        """Total degree of P; -1 for the zero polynomial."""
        return _degree(self.coeffs)

    def is_zero(self) -> bool:
        return self.degree < 0

    def polynomial(self, x1, x2):
        return npoly.polyval2d(x1, x2, self.coeffs)

    def __call__(self, x1, x2):
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        return self.polynomial(x1, x2) * np.exp(-np.pi * self.alpha * (x1 ** 2 + x2 ** 2))

    def sample(self, grid: GridSpec) -> QSignal:
        X1, X2 = grid.mesh()
        return QSignal.from_components(grid, self(X1, X2))


@dataclass(frozen=True, eq=False)
class QPolyGauss:
    """Quaternion ``Q(xi) exp(-pi alpha |xi|^2)``.

    ``coeffs[b, m, n]`` are real polynomial coefficients on the basis
    ``b`` = 1, i, j, k. With ``k = i j`` the ``i``/``k`` parts carry a left
    ``i`` and the ``j``/``k`` parts a right ``j``.
    """

    coeffs: np.ndarray
    alpha: float = 1.0
    real_source: bool = field(default=True)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        if c.ndim != 3 or c.shape[0] != 4:
            raise ValueError(f"expected coefficients of shape (4, M, N), got {c.shape}")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "alpha", float(self.alpha))

    @property
    def degree(self) -> int:
        return _degree(self.coeffs)

    def component(self, b: int) -> PolyGauss:
        return PolyGauss(self.coeffs[b], self.alpha)

    def polynomial(self, x1, x2) -> np.ndarray:
        return np.stack([npoly.polyval2d(x1, x2, self.coeffs[b]) for b in range(4)], axis=-1)

    def __call__(self, x1, x2) -> np.ndarray:
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        g = np.exp(-np.pi * self.alpha * (x1 ** 2 + x2 ** 2))
        return self.polynomial(x1, x2) * g[..., None]

    def sample(self, grid: GridSpec) -> QSpectrum:
        """Evaluate on ``grid``; for a real source the full spectrum is also component 0."""
        X1, X2 = grid.mesh()
        s = self(X1, X2)
        comps = None
        if self.real_source:
            comps = np.zeros((4,) + s.shape)
            comps[0] = s
        return QSpectrum(grid, s, comps)


def _unit_power(m: int, n: int) -> tuple[int, float]:
    """Basis index and sign of ``i^m j^n``."""
    basis = (m % 2) + 2 * (n % 2)
    sign = (-1.0) ** (m // 2 + n // 2)
    return basis, sign


def qft_polygauss(f: PolyGauss) -> QPolyGauss:
    """Closed-form transform of ``P(x) exp(-pi alpha |x|^2)``.

    Per monomial, with u = xi / sqrt(alpha)::

        F{x1^m x2^n e^{-pi a|x|^2}}(xi)
            = (1/2pi)^(m+n) a^(-1-(m+n)/2) P_m(u1) P_n(u2) e^{-pi |xi|^2 / a} i^m j^n

    which is the derivative rule ``(1/2pi)^(m+n) i^m d^(m+n) F j^n`` applied
    to the unit Gaussian, then dilated by sqrt(alpha).
    """
    a = f.alpha
    M, N = f.coeffs.shape
    out = np.zeros((4, M, N))
    scale = 1.0 / math.sqrt(a)
    for m in range(M):
        pm = hermite_factor(m) * scale ** np.arange(m + 1)
        for n in range(N):
            c = f.coeffs[m, n]
            if c == 0.0:
                continue
            pn = hermite_factor(n) * scale ** np.arange(n + 1)
            basis, sign = _unit_power(m, n)
            factor = c * sign * (1.0 / (2.0 * np.pi)) ** (m + n) / a * scale ** (m + n)
            out[basis, :m + 1, :n + 1] += factor * np.outer(pm, pn)
    return QPolyGauss(out, 1.0 / a)


# ---------------------------------------------------------------------------
# dilation

def _scaled_coeffs(coeffs: np.ndarray, a: float) -> np.ndarray:
    m = np.arange(coeffs.shape[-2])[:, None]
    n = np.arange(coeffs.shape[-1])[None, :]
    return coeffs * a ** (m + n)


def _nearest_resample(samples: np.ndarray, grid: GridSpec, a: float) -> np.ndarray:
    x1, x2 = grid.axes()
    i1 = np.rint(a * x1 / grid.d1).astype(int) + grid.n1 // 2
    i2 = np.rint(a * x2 / grid.d2).astype(int) + grid.n2 // 2
    ok1 = (i1 >= 0) & (i1 < grid.n1)
    ok2 = (i2 >= 0) & (i2 < grid.n2)
    out = np.zeros_like(samples)
    sub = samples[..., np.clip(i1, 0, grid.n1 - 1), :, :][..., :, np.clip(i2, 0, grid.n2 - 1), :]
    mask = (ok1[:, None] & ok2[None, :])[..., None]
    out[...] = np.where(mask, sub, 0.0)
    return out


def dilate(f, a: float):
    """Return ``x -> f(a x)``.

    PolyGauss and QPolyGauss inputs are dilated exactly; sampled signals are
    re-read at the nearest grid point (zero outside the box).
    """
    if not a > 0:
        raise ValueError(f"dilation factor must be positive, got {a}")
    if isinstance(f, PolyGauss):
        return PolyGauss(_scaled_coeffs(f.coeffs, a), f.alpha * a * a)
    if isinstance(f, QPolyGauss):
        return QPolyGauss(_scaled_coeffs(f.coeffs, a), f.alpha * a * a, f.real_source)
    if isinstance(f, QSignal):
        return QSignal(f.grid, _nearest_resample(f.samples, f.grid, a))
    raise TypeError(f"cannot dilate {type(f).__name__}")


def dilation_law(S, a: float):
    """Spectrum of ``f(a x)`` predicted from the spectrum ``S`` of ``f``: ``a^-2 S(xi / a)``."""
    if not a > 0:
        raise ValueError(f"dilation factor must be positive, got {a}")
    if isinstance(S, QPolyGauss):
        return QPolyGauss(_scaled_coeffs(S.coeffs, 1.0 / a) / (a * a), S.alpha / (a * a), S.real_source)
    if isinstance(S, QSpectrum):
        samples = _nearest_resample(S.samples, S.grid, 1.0 / a) / (a * a)
        comps = None
        if S.components is not None:
            comps = _nearest_resample(S.components, S.grid, 1.0 / a) / (a * a)
        return QSpectrum(S.grid, samples, comps)
    raise TypeError(f"no dilation law for {type(S).__name__}")
