"""Numerical self-checks of the transform identities on fixed fixtures.

Every check returns a :class:`LemmaResult` with the measured error and the
tolerance it was judged against. Seeds are fixed, so results repeat exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fixtures import noise
from .qft import (
    PolyGauss,
    convolve,
    dilate,
    dilation_law,
    qft_direct,
    qft_fast,
    qft_inverse,
    qft_polygauss,
)
from .qsignal import GridSpec, QSignal, l2_norm, module_l2_norm
from .quaternion import UNIT_I, UNIT_J, qmul


@dataclass(frozen=True)
class LemmaResult:
    name: str
    error: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.error <= self.tolerance)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.name}: error={self.error:.3e} tolerance={self.tolerance:.1e}{extra}"


GAUSSIAN_GRID = GridSpec.centered_box(64, 64, 6.0)
POLYGAUSS_GRID = GridSpec(64, 64, 0.15, 0.15)
DILATION_GRID = GridSpec(128, 128, 0.1, 0.1)


def check_plancherel(tolerance: float = 1e-9, n: int = 32, seed: int = 0) -> LemmaResult:
    f = noise(GridSpec(n, n, 0.25, 0.25), seed)
    a = l2_norm(f)
    err = abs(a - module_l2_norm(qft_fast(f))) / a
    return LemmaResult("plancherel", err, tolerance, f"{n}x{n} quaternion noise, relative")


def check_inverse(tolerance: float = 1e-9, n: int = 32, seed: int = 1) -> LemmaResult:
    f = noise(GridSpec(n, n, 0.25, 0.25), seed)
    back = qft_inverse(qft_fast(f))
    err = np.linalg.norm(back.samples - f.samples) / np.linalg.norm(f.samples)
    return LemmaResult("inverse", float(err), tolerance, f"{n}x{n} round trip, relative Frobenius")


def gaussian_error(grid: GridSpec = GAUSSIAN_GRID) -> float:
    S = qft_fast(PolyGauss.gaussian().sample(grid))
    X1, X2 = S.grid.mesh()
    expect = np.zeros(S.samples.shape)
    expect[..., 0] = np.exp(-np.pi * (X1 ** 2 + X2 ** 2))
    return float(np.max(np.abs(S.samples - expect)))


def check_gaussian(tolerance: float = 1e-6) -> LemmaResult:
    return LemmaResult("gaussian", gaussian_error(), tolerance, "64x64 on [-6,6)^2, max pointwise")


def module_law_error(f: QSignal) -> float:
    i_f_j = QSignal(f.grid, qmul(qmul(UNIT_I, f.samples), UNIT_J))
    lhs = qft_fast(i_f_j).samples
    rhs = qmul(qmul(UNIT_I, qft_fast(f).samples), UNIT_J)
    return float(np.max(np.abs(lhs - rhs)))


def check_module_law(tolerance: float = 1e-10, seed: int = 2) -> LemmaResult:
    f = noise(GridSpec(32, 32, 0.25, 0.25), seed, real=True)
    return LemmaResult("module-law", module_law_error(f), tolerance, "random real 32x32, max pointwise")


def convolution_error(f: QSignal, g: QSignal) -> float:
    lhs = qft_fast(convolve(f, g)).samples
    rhs = qmul(qft_fast(f).samples, qft_fast(g).samples)
    return float(np.max(np.abs(lhs - rhs)))


def check_convolution(tolerance: float = 1e-8, seed: int = 3) -> LemmaResult:
    grid = GridSpec(32, 32, 0.25, 0.25)
    f = noise(grid, seed, real=True)
    g = noise(grid, seed + 1, real=True)
    return LemmaResult("convolution", convolution_error(f, g), tolerance, "random real pair, max pointwise")


def check_convolution_restricted(tolerance: float = 1e-8, seed: int = 3) -> LemmaResult:
    """The identity with ``g`` even in x1, where it does hold for real pairs."""
    grid = GridSpec(32, 32, 0.25, 0.25)
    f = noise(grid, seed, real=True)
    g = noise(grid, seed + 1, real=True)
    s = np.array(g.samples)
    mirror = (2 * (grid.n1 // 2) - np.arange(grid.n1)) % grid.n1
    g_even = QSignal(grid, 0.5 * (s + s[mirror]))
    return LemmaResult("convolution[g even in x1]", convolution_error(f, g_even), tolerance,
                       "random real f, x1-even real g")


def polygauss_errors(grid: GridSpec = POLYGAUSS_GRID, max_total: int = 4, alphas=(0.5, 1.0, 2.0)):
    """Yield ``(m, n, alpha, max_error, degree_in, degree_out)`` for each monomial fixture."""
    dual = grid.dual()
    for alpha in alphas:
        for m in range(max_total + 1):
            for n in range(max_total + 1 - m):
                f = PolyGauss.monomial(m, n, alpha)
                closed = qft_polygauss(f)
                numeric = qft_direct(f.sample(grid)).samples
                err = float(np.max(np.abs(closed.sample(dual).samples - numeric)))
                yield m, n, alpha, err, f.degree, closed.degree


def check_polygauss(tolerance: float = 1e-5) -> LemmaResult:
    worst, degree_ok = 0.0, True
    for m, n, alpha, err, din, dout in polygauss_errors():
        worst = max(worst, err)
        degree_ok &= din == dout
    err = worst if degree_ok else np.inf
    return LemmaResult("polygauss", err, tolerance, "m+n<=4, alpha in {0.5,1,2}; degrees preserved"
                       if degree_ok else "degree mismatch")


def random_polygauss(seed: int = 4, degree: int = 2, alpha: float = 1.0) -> PolyGauss:
    rng = np.random.default_rng(seed)
    c = rng.uniform(-1.0, 1.0, (degree + 1, degree + 1))
    m, n = np.indices(c.shape)
    c[m + n > degree] = 0.0
    return PolyGauss(c, alpha)


def dilation_error(f: PolyGauss, a: float, grid: GridSpec = DILATION_GRID) -> float:
    numeric = qft_direct(dilate(f, a).sample(grid)).samples
    law = dilation_law(qft_polygauss(f), a).sample(grid.dual()).samples
    return float(np.max(np.abs(numeric - law)))


def check_dilation(tolerance: float = 1e-5) -> LemmaResult:
    err = max(dilation_error(PolyGauss.gaussian(), 2.0), dilation_error(random_polygauss(), 0.5))
    return LemmaResult("dilation", err, tolerance, "gaussian a=2, random PolyGauss a=0.5")


CHECKS = {
    "plancherel": check_plancherel,
    "inverse": check_inverse,
    "convolution": check_convolution,
    "gaussian": check_gaussian,
    "module-law": check_module_law,
    "polygauss": check_polygauss,
    "dilation": check_dilation,
}
