"""Numerical certificates for the Beurling, Hardy, Gelfand-Shilov and
Cowling-Price conditions of the two-sided QFT.

Each check evaluates its integrals (or sup-constants) on nested radii and
classifies the sequence as convergent, divergent or inconclusive. A
convergent hypothesis then selects the conclusion class the corresponding
uncertainty principle forces on ``f``.

Two evaluation paths are supported:

* :class:`~quatft.qft.PolyGauss` inputs use a radial reduction. The weights
  depend on ``|x|`` and ``|y|`` only, so angular integrals (or sups) of
  ``|P|`` are taken numerically per radius and the Gaussian factor is kept
  in closed form. Everything runs in log space, so ``exp(2 pi |x||y|)``
  never overflows.
* :class:`~quatft.qsignal.QSignal` inputs are summed over grid points. The
  ladder is cut at the largest disc that fits in the grid, and results are
  only meaningful while the spectrum is above floating-point noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from .qft import PolyGauss, QPolyGauss, qft_fast, qft_polygauss
from .qsignal import QSignal, QSpectrum, module_norm

DEFAULT_LADDER = (2.0, 4.0, 8.0, 16.0)
RADIAL_STEP = 1.0 / 64.0
ANGLES = 256
SAMPLED_MAX_SIDE = 32

CONVERGENT = "convergent"
DIVERGENT = "divergent"
INCONCLUSIVE = "inconclusive"

# classifier thresholds
REL_INCREMENT_TOL = 1e-3
DIVERGENT_SLOPE = 0.1
MIN_DECAY_EXPONENT = 0.5
MONOTONE_SLACK = 0.95


# ---------------------------------------------------------------------------
# parameters

def _conjugate(p: float, q: float | None) -> float:
    if not 1.0 < p < math.inf:
        raise ValueError(f"p must lie in (1, inf), got {p}")
    if q is None:
        q = p / (p - 1.0)
    if not 1.0 < q < math.inf:
        raise ValueError(f"q must lie in (1, inf), got {q}")
    if abs(1.0 / p + 1.0 / q - 1.0) > 1e-12:
        raise ValueError(f"p={p} and q={q} are not conjugate exponents")
    return float(q)


@dataclass(frozen=True)
class BeurlingParams:
    d: float

    def __post_init__(self):
        if not self.d >= 0:
            raise ValueError(f"d must be >= 0, got {self.d}")


@dataclass(frozen=True)
class HardyParams:
    d: float
    alpha: float
    beta: float

    def __post_init__(self):
        if not self.d >= 0:
            raise ValueError(f"d must be >= 0, got {self.d}")
        if not (self.alpha > 0 and self.beta > 0):
            raise ValueError("alpha and beta must be positive")


@dataclass(frozen=True)
class GelfandShilovParams:
    d: int
    alpha: float
    beta: float
    p: float
    q: float | None = None

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 0:
            raise ValueError(f"d must be a nonnegative integer, got {self.d}")
        if not (self.alpha >= 1 and self.beta >= 1):
            raise ValueError("alpha and beta must be >= 1")
        object.__setattr__(self, "q", _conjugate(self.p, self.q))


@dataclass(frozen=True)
class CowlingPriceParams:
    d: float
    alpha: float
    beta: float
    p: float
    q: float | None = None

    def __post_init__(self):
        if not self.d >= 0:
            raise ValueError(f"d must be >= 0, got {self.d}")
        if not (self.alpha > 0 and self.beta > 0):
            raise ValueError("alpha and beta must be positive")
        object.__setattr__(self, "q", _conjugate(self.p, self.q))


# ---------------------------------------------------------------------------
# reports

ZERO = "zero"
POLY_TIMES_GAUSSIAN = "poly_times_gaussian"
UNCONSTRAINED = "unconstrained"


@dataclass(frozen=True)
class Conclusion:
    kind: str
    max_degree: int | None = None
    width: float | None = None

    def __str__(self):
        if self.kind != POLY_TIMES_GAUSSIAN:
            return self.kind
        w = "" if self.width is None else f", width={self.width:.12g}"
        return f"{self.kind}(max_degree={self.max_degree}{w})"


@dataclass(frozen=True)
class CertificateReport:
    theorem: str
    params: dict
    radii: tuple
    log_values: dict
    growth: dict
    side_verdicts: dict
    verdict: str
    conclusion: Conclusion
    norm: str
    degree_rule: str
    attaining: dict = field(default_factory=dict)
    notes: tuple = ()

    def values(self, side: str) -> np.ndarray:
        """Partial values of one side (may contain ``inf`` if they overflow a float)."""
        with np.errstate(over="ignore"):
            return np.exp(np.asarray(self.log_values[side]))

    def to_kv(self) -> str:
        lines = [f"theorem={self.theorem}"]
        for k, v in self.params.items():
            lines.append(f"param.{k}={v!r}")
        lines.append("radii=" + ",".join(f"{r:g}" for r in self.radii))
        for side, vals in self.log_values.items():
            lines.append(f"log_values.{side}=" + ",".join(repr(float(v)) for v in vals))
            lines.append(f"growth.{side}={float(self.growth[side])!r}")
            lines.append(f"verdict.{side}={self.side_verdicts[side]}")
        for side, pt in self.attaining.items():
            lines.append(f"attaining.{side}=" + ",".join(repr(float(v)) for v in pt))
        lines.append(f"norm={self.norm}")
        lines.append(f"verdict={self.verdict}")
        lines.append(f"conclusion={self.conclusion.kind}")
        lines.append(f"conclusion.max_degree={self.conclusion.max_degree}")
        lines.append(f"conclusion.width={self.conclusion.width!r}")
        lines.append(f"degree_rule={self.degree_rule}")
        for n in self.notes:
            lines.append(f"note={n}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        params = ", ".join(f"{k}={v:g}" for k, v in self.params.items())
        out = [f"{self.theorem} certificate ({params}); spectrum norm: {self.norm}"]
        for side, vals in self.log_values.items():
            out.append(f"  [{side}] growth exponent {self.growth[side]:.4g}, {self.side_verdicts[side]}")
            for r, v in zip(self.radii, vals):
                out.append(f"    R={r:<8g} value={_fmt_log(v)}")
            if side in self.attaining:
                pt = ", ".join(f"{c:.4g}" for c in self.attaining[side])
                out.append(f"    sup attained at ({pt})")
        out.append(f"  verdict: {self.verdict}")
        out.append(f"  forced conclusion: {self.conclusion}  [{self.degree_rule}]")
        for n in self.notes:
            out.append(f"  note: {n}")
        return "\n".join(out) + "\n"


def _fmt_log(v: float) -> str:
    if v == -np.inf:
        return "0"
    if v < 700:
        return f"{math.exp(v):.10g}"
    return f"exp({v:.6g})"


# ---------------------------------------------------------------------------
# ladder classification

def _log_diff(a: float, b: float) -> float:
    """log(exp(b) - exp(a)) for b >= a."""
    if b == -np.inf or a >= b:
        return -np.inf
    if a == -np.inf:
        return b
    return b + math.log1p(-math.exp(a - b))


def classify_ladder(radii, log_values) -> tuple[str, float]:
    """Classify a nondecreasing sequence of partial values on a radius ladder.

    Returns ``(verdict, growth)`` where ``growth`` is the least-squares slope
    of log(value) against log(R).

    * empty ladder: inconclusive;
    * all values zero, or last relative increment below ``1e-3``: convergent;
    * increments shrinking with ``dV ~ R**-kappa``, ``kappa >= 0.5``: convergent
      (a summable tail over the doubling ladder);
    * growth slope above 0.1 with non-shrinking increments: divergent;
    * anything else: inconclusive.
    """
    radii = np.asarray(radii, dtype=float)
    lv = np.asarray(log_values, dtype=float)
    if lv.size == 0:
        return INCONCLUSIVE, float("nan")
    if np.all(lv == -np.inf):
        return CONVERGENT, 0.0
    finite = np.isfinite(lv)
    if np.any(lv == np.inf) or np.any(np.isnan(lv)):
        return INCONCLUSIVE, float("nan")
    growth = 0.0
    if finite.sum() >= 2:
        growth = float(np.polyfit(np.log(radii[finite]), lv[finite], 1)[0])
    if len(lv) < 3:
        return INCONCLUSIVE, growth
    inc = np.array([_log_diff(lv[k], lv[k + 1]) for k in range(len(lv) - 1)])
    if inc[-1] == -np.inf or inc[-1] - lv[-1] < math.log(REL_INCREMENT_TOL):
        return CONVERGENT, growth
    if np.all(np.isfinite(inc)):
        ratios = np.diff(inc)
        if np.all(ratios < 0):
            kappa = -float(np.polyfit(np.log(radii[1:]), inc, 1)[0])
            if kappa >= MIN_DECAY_EXPONENT:
                return CONVERGENT, growth
        if growth > DIVERGENT_SLOPE and np.all(ratios >= math.log(MONOTONE_SLACK)):
            return DIVERGENT, growth
    return INCONCLUSIVE, growth


def _combine(*verdicts: str) -> str:
    if all(v == CONVERGENT for v in verdicts):
        return CONVERGENT
    if any(v == DIVERGENT for v in verdicts):
        return DIVERGENT
    return INCONCLUSIVE


def _below(bound: float) -> int:
    """Largest integer strictly below ``bound``."""
    return math.ceil(bound) - 1


def _ptg(max_degree: int, width: float | None = None) -> Conclusion:
    if max_degree < 0:
        return Conclusion(ZERO)
    return Conclusion(POLY_TIMES_GAUSSIAN, max_degree, width)


def _close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-15)


# ---------------------------------------------------------------------------
# sides: point masses (for integrals) or point values (for sups) by radius

@dataclass
class _Side:
    r: np.ndarray            # sorted radii
    logv: np.ndarray         # log of mass (integrals) or value (sups)
    points: np.ndarray       # (len, 2) coordinates, used to report sup location

    def upto(self, R: float) -> int:
        return int(np.searchsorted(self.r, R, side="right"))


def _log(a):
    with np.errstate(divide="ignore"):
        return np.log(a)


def _make_side(r, logv, points) -> _Side:
    order = np.argsort(r, kind="stable")
    return _Side(np.asarray(r)[order], np.asarray(logv)[order], np.asarray(points)[order])


def _radial_side(poly, gauss_alpha: float, rmax: float, power: float, sup: bool) -> _Side:
    """Radial profile of ``|poly|^power * exp(-power pi gauss_alpha r^2)``.

    ``poly(x1, x2)`` returns the pointwise modulus of the polynomial part.
    For integrals each node carries the mass of its annulus (midpoint rule);
    for sups each node carries the largest value on its circle.
    """
    h = RADIAL_STEP
    n = int(round(rmax / h))
    theta = 2.0 * np.pi * np.arange(ANGLES) / ANGLES      # includes the axes, where monomials peak
    if sup:
        r = np.arange(n + 1) * h
    else:
        r = (np.arange(n) + 0.5) * h
    X1 = r[:, None] * np.cos(theta)[None, :]
    X2 = r[:, None] * np.sin(theta)[None, :]
    vals = np.abs(poly(X1, X2))
    gauss = -power * np.pi * gauss_alpha * r ** 2
    if sup:
        k = np.argmax(vals, axis=1)
        logv = power * _log(vals[np.arange(r.size), k]) + gauss
        pts = np.column_stack([r * np.cos(theta[k]), r * np.sin(theta[k])])
    else:
        ang = np.mean(vals ** power, axis=1) * 2.0 * np.pi
        logv = _log(ang * r * h) + gauss
        pts = np.column_stack([r, np.zeros_like(r)])
    return _make_side(r, logv, pts)


def _grid_side(values: np.ndarray, grid, power: float, sup: bool) -> _Side:
    X1, X2 = grid.mesh()
    r = np.hypot(X1, X2).ravel()
    logv = power * _log(np.asarray(values).ravel())
    if not sup:
        logv = logv + math.log(grid.cell_area)
    return _make_side(r, logv, np.column_stack([X1.ravel(), X2.ravel()]))


class _Source:
    """A signal together with its spectrum, in whichever representation applies."""

    def __init__(self, f, spectrum=None, norm: str = "module"):
        if norm not in ("module", "modulus"):
            raise ValueError(f"norm must be 'module' or 'modulus', got {norm!r}")
        self.norm = norm
        if isinstance(f, PolyGauss):
            self.radial = True
            self.f = f
            self.S = spectrum if spectrum is not None else qft_polygauss(f)
            if not isinstance(self.S, QPolyGauss):
                raise TypeError("PolyGauss input needs a QPolyGauss spectrum")
            self.zero = f.is_zero()
        elif isinstance(f, QSignal):
            self.radial = False
            if max(f.grid.shape) > SAMPLED_MAX_SIDE:
                raise ValueError(
                    f"sampled certificates are limited to {SAMPLED_MAX_SIDE} points per axis, "
                    f"got {f.grid.shape}; pass a PolyGauss for the radial path"
                )
            self.f = f
            self.S = spectrum if spectrum is not None else qft_fast(f)
            if not isinstance(self.S, QSpectrum):
                raise TypeError("QSignal input needs a QSpectrum")
            if norm == "module":
                self.spec_abs = module_norm(self.S)
            else:
                self.spec_abs = self.S.modulus()
            self.zero = not np.any(f.samples)
        else:
            raise TypeError(f"unsupported signal type {type(f).__name__}")

    def default_radii(self) -> tuple:
        """The standard ladder, or for sampled inputs a doubling ladder ending at the grid disc."""
        if self.radial:
            return DEFAULT_LADDER
        rmax = min(self.f.grid.inscribed_radius(), self.S.grid.inscribed_radius())
        return tuple(rmax / 2.0 ** k for k in (3, 2, 1, 0))

    def limit(self, radii) -> tuple:
        if self.radial:
            return tuple(float(r) for r in radii)
        rmax = min(self.f.grid.inscribed_radius(), self.S.grid.inscribed_radius())
        return tuple(float(r) for r in radii if r <= rmax)

    def signal_side(self, rmax, power=1.0, sup=False) -> _Side:
        if self.radial:
            poly = self.f.polynomial
            return _radial_side(poly, self.f.alpha, rmax, power, sup)
        return _grid_side(self.f.modulus(), self.f.grid, power, sup)

    def spectrum_side(self, rmax, power=1.0, sup=False) -> _Side:
        if self.radial:
            S = self.S

            def qmod(x1, x2):
                return np.sqrt(np.sum(S.polynomial(x1, x2) ** 2, axis=-1))

            return _radial_side(qmod, S.alpha, rmax, power, sup)
        return _grid_side(self.spec_abs, self.S.grid, power, sup)


def _ladder(radii, ladder_default=DEFAULT_LADDER):
    radii = tuple(ladder_default if radii is None else radii)
    if any(b <= a for a, b in zip(radii, radii[1:])) or radii[0] <= 0:
        raise ValueError(f"radius ladder must be positive and increasing, got {radii}")
    return radii


def _lse(a: np.ndarray) -> float:
    a = a[np.isfinite(a)] if a.size else a
    if a.size == 0:
        return -np.inf
    return float(logsumexp(a))


def _too_short_note(src: _Source, radii, used) -> tuple:
    notes = ()
    if len(used) != len(radii):
        notes += (f"ladder cut to {used} by the sampled grid box",)
    if not src.radial and used and max(used) < DEFAULT_LADDER[0]:
        notes += (f"sampled ladder ends at R={max(used):g}, before the values settle; "
                  "treat the verdict as advisory and prefer the radial path",)
    return notes


# ---------------------------------------------------------------------------
# Beurling

def _beurling_log_matrix(fs: _Side, Fs: _Side, d: float, nf: int, nF: int) -> np.ndarray:
    r = fs.r[:nf, None]
    s = Fs.r[None, :nF]
    return fs.logv[:nf, None] + Fs.logv[None, :nF] + 2.0 * np.pi * r * s - d * np.log1p(r + s)


def _beurling_ladder(src: _Source, d: float, radii) -> list[float]:
    rmax = max(radii)
    fs = src.signal_side(rmax)
    Fs = src.spectrum_side(rmax)
    nf, nF = fs.upto(rmax), Fs.upto(rmax)
    L = _beurling_log_matrix(fs, Fs, d, nf, nF)
    return [_lse(L[:fs.upto(R), :Fs.upto(R)].ravel()) for R in radii]


def beurling_integral(f, spectrum, params: BeurlingParams, R: float, norm: str = "module") -> float:
    """Truncated Beurling double integral over ``|x| <= R``, ``|y| <= R``.

    ``spectrum`` may be ``None``; it is then computed (closed form for
    PolyGauss, fast transform for sampled signals). May return ``inf`` when
    the value exceeds the float range.
    """
    if not R > 0:
        raise ValueError(f"R must be positive, got {R}")
    src = _Source(f, spectrum, norm)
    (lv,) = _beurling_ladder(src, params.d, (R,))
    with np.errstate(over="ignore"):
        return float(np.exp(lv))


def beurling_certify(f, params: BeurlingParams, spectrum=None, radii=None, norm: str = "module") -> CertificateReport:
    src = _Source(f, spectrum, norm)
    radii = _ladder(radii, src.default_radii())
    used = src.limit(radii)
    lv = _beurling_ladder(src, params.d, used) if used else []
    verdict, growth = classify_ladder(used, lv)
    d = params.d
    if verdict != CONVERGENT:
        conclusion = Conclusion(UNCONSTRAINED)
    elif src.zero or d <= 2:
        conclusion = Conclusion(ZERO)
    else:
        conclusion = _ptg(_below((d - 2) / 2))
    notes = _too_short_note(src, radii, used)
    if verdict == CONVERGENT and d <= 2 and not src.zero:
        notes += ("convergent hypothesis for a nonzero signal with d <= 2 contradicts the theorem; "
                  "suspect truncation or sampling",)
    return CertificateReport(
        theorem="beurling",
        params={"d": d},
        radii=used,
        log_values={"beurling": tuple(lv)},
        growth={"beurling": growth},
        side_verdicts={"beurling": verdict},
        verdict=verdict,
        conclusion=conclusion,
        norm=norm,
        degree_rule="deg P < (d-2)/2",
        notes=notes,
    )


# ---------------------------------------------------------------------------
# two-sided checks

def _running(side: _Side, radii, weight, sup: bool):
    lw = side.logv + weight(side.r)
    out, where = [], None
    for R in radii:
        n = side.upto(R)
        seg = lw[:n]
        if sup:
            if n == 0 or not np.any(np.isfinite(seg)):
                out.append(-np.inf)
                continue
            k = int(np.nanargmax(np.where(np.isfinite(seg), seg, -np.inf)))
            out.append(float(seg[k]))
            where = side.points[k]
        else:
            out.append(_lse(seg))
    return out, where


def _two_sided(theorem, src, radii, f_weight, F_weight, power_f, power_F, sup, params, rule, decide):
    radii = _ladder(radii, src.default_radii())
    used = src.limit(radii)
    rmax = max(used) if used else 0.0
    log_values, growth, side_verdicts, attaining = {}, {}, {}, {}
    for name, side, weight in (
        ("signal", src.signal_side(rmax, power_f, sup) if used else None, f_weight),
        ("spectrum", src.spectrum_side(rmax, power_F, sup) if used else None, F_weight),
    ):
        lv, where = _running(side, used, weight, sup) if side is not None else ([], None)
        v, g = classify_ladder(used, lv)
        log_values[name] = tuple(lv)
        growth[name] = g
        side_verdicts[name] = v
        if sup and where is not None:
            attaining[name] = tuple(where)
    verdict = _combine(*side_verdicts.values())
    if verdict != CONVERGENT:
        conclusion = Conclusion(UNCONSTRAINED)
    elif src.zero:
        conclusion = Conclusion(ZERO)
    else:
        conclusion = decide()
    return CertificateReport(
        theorem=theorem,
        params=params,
        radii=used,
        log_values=log_values,
        growth=growth,
        side_verdicts=side_verdicts,
        verdict=verdict,
        conclusion=conclusion,
        norm=src.norm,
        degree_rule=rule,
        attaining=attaining,
        notes=_too_short_note(src, radii, used),
    )


def hardy_check(f, params: HardyParams, spectrum=None, radii=None, norm: str = "module") -> CertificateReport:
    """Sup-constants ``|f|(1+|x|)^-d e^{pi alpha |x|^2}`` and the spectral analogue with beta."""
    src = _Source(f, spectrum, norm)
    d, a, b = params.d, params.alpha, params.beta

    def decide():
        if a * b > 1 and not _close(a * b, 1.0):
            return Conclusion(ZERO)
        if _close(a * b, 1.0):
            return _ptg(math.floor(d + 1e-12), np.pi * a)
        return Conclusion(UNCONSTRAINED)

    return _two_sided(
        "hardy", src, radii,
        lambda r: np.pi * a * r ** 2 - d * np.log1p(r),
        lambda r: np.pi * b * r ** 2 - d * np.log1p(r),
        1.0, 1.0, True,
        {"d": d, "alpha": a, "beta": b},
        "deg P <= d",
        decide,
    )


def gelfand_shilov_check(f, params: GelfandShilovParams, spectrum=None, radii=None,
                         norm: str = "module") -> CertificateReport:
    src = _Source(f, spectrum, norm)
    d, a, b, p, q = params.d, params.alpha, params.beta, params.p, params.q

    def decide():
        if not (_close(p, 2.0) and _close(q, 2.0)) or (a * b > 1 and not _close(a * b, 1.0)):
            return Conclusion(ZERO)
        return _ptg(_below(d - 2), np.pi * a * a)

    return _two_sided(
        "gelfand-shilov", src, radii,
        lambda r: 2.0 * np.pi * a ** p / p * r ** p - d * np.log1p(r),
        lambda r: 2.0 * np.pi * b ** q / q * r ** q - d * np.log1p(r),
        1.0, 1.0, False,
        {"d": d, "alpha": a, "beta": b, "p": p, "q": q},
        "deg P < d-2",
        decide,
    )


def cowling_price_check(f, params: CowlingPriceParams, spectrum=None, radii=None,
                        norm: str = "module") -> CertificateReport:
    src = _Source(f, spectrum, norm)
    d, a, b, p, q = params.d, params.alpha, params.beta, params.p, params.q

    def decide():
        ab = a * b
        if ab > 0.25 and not _close(ab, 0.25):
            return Conclusion(ZERO)
        if _close(ab, 0.25):
            return _ptg(_below(min((d - 2) / p, (d - 2) / q)), 2.0 * np.pi * a)
        return Conclusion(UNCONSTRAINED)

    return _two_sided(
        "cowling-price", src, radii,
        lambda r: p * (2.0 * np.pi * a * r ** 2 - d * np.log1p(r)),
        lambda r: q * (2.0 * np.pi * b * r ** 2 - d * np.log1p(r)),
        p, q, False,
        {"d": d, "alpha": a, "beta": b, "p": p, "q": q},
        "deg P < min((d-2)/p, (d-2)/q)",
        decide,
    )


# ---------------------------------------------------------------------------

def young_slack(x, y, alpha: float, beta: float, p: float, q: float) -> float:
    """``(alpha^p/p)|x|^p + (beta^q/q)|y|^q - alpha beta |x||y|`` (nonnegative by Young)."""
    q = _conjugate(p, q)
    ax = float(np.linalg.norm(np.atleast_1d(np.asarray(x, dtype=float))))
    ay = float(np.linalg.norm(np.atleast_1d(np.asarray(y, dtype=float))))
    return alpha ** p / p * ax ** p + beta ** q / q * ay ** q - alpha * beta * ax * ay


def young_bound_check(x, y, alpha: float, beta: float, p: float, q: float, tol: float = 1e-12) -> bool:
    """True when ``alpha beta |x||y| <= (alpha^p/p)|x|^p + (beta^q/q)|y|^q`` up to ``tol`` (relative)."""
    slack = young_slack(x, y, alpha, beta, p, q)
    q = _conjugate(p, q)
    ax = float(np.linalg.norm(np.atleast_1d(np.asarray(x, dtype=float))))
    ay = float(np.linalg.norm(np.atleast_1d(np.asarray(y, dtype=float))))
    rhs = alpha ** p / p * ax ** p + beta ** q / q * ay ** q
    return slack >= -tol * max(1.0, rhs)
