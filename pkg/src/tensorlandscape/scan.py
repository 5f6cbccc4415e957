"""Grid scans, one-dimensional projections, and band detection for complexity maps.

The closed forms in :mod:`tensorlandscape.complexity` are cheap to evaluate,
so global structure is extracted numerically: maximize over one landscape
coordinate at a fixed value of the other (coarse scan plus golden-section
polish), locate the overlap band where local maxima are exponentially
numerous (sign-change bisection on the projection), and rasterize the
nonnegativity region of either complexity over a rectangular grid.

Grid evaluation is vectorized numpy and therefore deterministic and
trivially data-parallel; no randomness enters this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .complexity import ModelParams, s_star, s_zero

__all__ = [
    "GridSpec",
    "BandReport",
    "ProjectionResult",
    "grid_centers",
    "project_max_over_x",
    "project_max_over_m",
    "region_nonnegative",
    "band_endpoints",
]

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class GridSpec:
    """Rectangular (m, x) grid: bounds plus cell counts along each axis.

    Cells are half-open boxes of equal size; evaluation happens at cell
    centers.  ``m`` bounds must stay within [-1, 1].
    """

    m_min: float
    m_max: float
    x_min: float
    x_max: float
    m_steps: int
    x_steps: int

    def __post_init__(self) -> None:
        for name in ("m_min", "m_max", "x_min", "x_max"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, v)
        if not (-1.0 <= self.m_min < self.m_max <= 1.0):
            raise ValueError("need -1 <= m_min < m_max <= 1")
        if not self.x_min < self.x_max:
            raise ValueError("need x_min < x_max")
        for name in ("m_steps", "x_steps"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or v < 2:
                raise ValueError(f"{name} must be an integer >= 2, got {v!r}")
            object.__setattr__(self, name, int(v))


@dataclass(frozen=True)
class ProjectionResult:
    """Argmax and value of a one-dimensional complexity maximization."""

    arg: float
    value: float


@dataclass(frozen=True)
class BandReport:
    """Overlap band where the projected complexity is nonnegative.

    ``m1 <= 0 <= m2`` are the crossing overlaps around the uninformative
    cluster at m = 0 (None if the projection is nonpositive already at 0).
    ``m_star`` is the isolated high-overlap location where the projection
    climbs back to zero; present only above the critical SNR.
    """

    m1: float | None
    m2: float | None
    m_star: float | None


def grid_centers(grid: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    """Cell-center coordinates of a grid, as (m_centers, x_centers)."""
    dm = (grid.m_max - grid.m_min) / grid.m_steps
    dx = (grid.x_max - grid.x_min) / grid.x_steps
    m = grid.m_min + (np.arange(grid.m_steps) + 0.5) * dm
    x = grid.x_min + (np.arange(grid.x_steps) + 0.5) * dx
    return m, x


def _complexity_fn(which: str):
    if which == "star":
        return s_star
    if which == "zero":
        return s_zero
    raise ValueError(f"which must be 'star' or 'zero', got {which!r}")


def _golden_max(fn, lo: float, hi: float, xtol: float) -> tuple[float, float]:
    # golden-section search for a maximum; tolerates -inf values (plain
    # comparisons push the bracket toward the finite side).  Returns the best
    # point actually evaluated: the maximizer may sit on a jump (e.g. the
    # spectral cutoff below which the local-max complexity is -inf) and the
    # bracket midpoint could land on its wrong side.
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = fn(c), fn(d)
    best_x, best_f = (c, fc) if fc >= fd else (d, fd)
    while (b - a) > xtol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = fn(c)
            if fc > best_f:
                best_x, best_f = c, fc
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = fn(d)
            if fd > best_f:
                best_x, best_f = d, fd
    return best_x, best_f


def _scan_and_refine(fn, lo: float, hi: float, coarse: int, xtol: float) -> ProjectionResult:
    xs = np.linspace(lo, hi, coarse)
    vals = np.asarray(fn(xs), dtype=float)
    finite = np.isfinite(vals)
    if not np.any(finite):
        return ProjectionResult(arg=math.nan, value=-math.inf)

    # every coarse local maximum seeds a golden-section polish; this keeps
    # multimodal projections (band + high-overlap bump) honest
    seeds = []
    for i in np.flatnonzero(finite):
        left = vals[i - 1] if i > 0 else -np.inf
        right = vals[i + 1] if i < coarse - 1 else -np.inf
        if vals[i] >= left and vals[i] >= right:
            seeds.append(i)
    best_arg, best_val = math.nan, -math.inf
    for i in seeds:
        a = xs[max(i - 1, 0)]
        b = xs[min(i + 1, coarse - 1)]
        arg, val = _golden_max(lambda u: float(fn(u)), a, b, xtol)
        if vals[i] > val:  # refinement must never lose to its own seed
            arg, val = float(xs[i]), float(vals[i])
        if val > best_val:
            best_arg, best_val = arg, val
    return ProjectionResult(arg=best_arg, value=best_val)


def project_max_over_x(
    params: ModelParams,
    m: float,
    which: str = "star",
    x_search: tuple[float, float] | None = None,
    coarse: int = 401,
    xtol: float = 1e-9,
) -> ProjectionResult:
    """Maximize the chosen complexity over the objective value x at fixed overlap m.

    The default search interval [-(lam+3), lam+3] always contains the
    maximizer: the optimal x drifts to lam as |m| -> 1 and stays O(1) at
    m = 0.  Returns (nan, -inf) when the complexity is -inf on the whole
    interval.
    """
    if not abs(m) < 1.0:
        raise ValueError("projection over x requires |m| < 1")
    fn = _complexity_fn(which)
    if x_search is None:
        x_search = (-(params.lam + 3.0), params.lam + 3.0)
    lo, hi = map(float, x_search)
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValueError("x_search must be a finite interval (lo, hi) with lo < hi")
    return _scan_and_refine(lambda x: fn(params, m, x), lo, hi, coarse, xtol)


def project_max_over_m(
    params: ModelParams,
    x: float,
    which: str = "star",
    m_search: tuple[float, float] | None = None,
    coarse: int = 401,
    xtol: float = 1e-9,
) -> ProjectionResult:
    """Maximize the chosen complexity over the overlap m at fixed objective value x."""
    fn = _complexity_fn(which)
    if m_search is None:
        m_search = (-1.0 + 1e-9, 1.0 - 1e-9)
    lo, hi = map(float, m_search)
    if not (-1.0 < lo < hi < 1.0):
        raise ValueError("m_search must satisfy -1 < lo < hi < 1")
    return _scan_and_refine(lambda m: fn(params, m, x), lo, hi, coarse, xtol)


def region_nonnegative(
    params: ModelParams, grid: GridSpec, which: str = "zero", tol: float = 0.0
) -> np.ndarray:
    """Boolean mask, shape (m_steps, x_steps): complexity >= -tol at cell centers.

    tol = 0 is the exact sign region.  A small positive tol widens it enough
    to expose measure-zero features (the complexity touches zero at a single
    point above the critical SNR, which no finite grid hits exactly).
    """
    fn = _complexity_fn(which)
    m, x = grid_centers(grid)
    vals = fn(params, m[:, None], x[None, :])
    return np.asarray(vals >= -float(tol))


def _bisect_crossing(fn, lo: float, hi: float, xtol: float = 1e-10, maxiter: int = 200) -> float:
    f_lo = fn(lo)
    f_hi = fn(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0.0) == (f_hi > 0.0):
        raise ValueError("bisection bracket does not straddle a sign change")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        # the bracket may be passed in descending order (negative-m scans)
        if abs(hi - lo) <= xtol:
            return mid
        f_mid = fn(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def band_endpoints(
    params: ModelParams,
    which: str = "zero",
    scan_points: int = 1200,
    zero_tol: float = 1e-9,
    xtol: float = 1e-10,
) -> BandReport:
    """Locate where the projected complexity max_x S(m, x) changes sign.

    Scans the projection outward from m = 0 on both sides and bisects the
    first sign change to ``xtol``; that pair (m1, m2) brackets the band of
    exponentially numerous uninformative points.  A second, interior local
    maximum of the projection at high overlap whose value is within
    ``zero_tol`` of zero is reported as ``m_star`` (the signal-correlated
    touch point); absent below the critical SNR.
    """

    def proj(m: float) -> float:
        return project_max_over_x(params, m, which=which).value

    limit = 1.0 - 1e-7

    def first_crossing(side: float) -> float | None:
        ms = side * np.linspace(0.0, limit, scan_points)
        if proj(0.0) <= 0.0:
            return None
        prev_m = 0.0
        for m in ms[1:]:
            if proj(float(m)) <= 0.0:
                return _bisect_crossing(proj, float(prev_m), float(m), xtol=xtol)
            prev_m = float(m)
        return None

    m2 = first_crossing(+1.0)
    m1 = first_crossing(-1.0)

    # high-overlap touch point: an interior local max of the projection to
    # the right of the band whose height is ~0.  The bump narrows sharply as
    # it approaches m = 1 at large SNR, so the scan grid mixes uniform
    # spacing with log spacing in (1 - m).
    m_star = None
    if m2 is not None:
        lo = min(m2 + (limit - m2) / 600.0, limit)
        ms = np.unique(
            np.concatenate(
                [
                    np.linspace(lo, limit, 300),
                    1.0 - np.geomspace(1.0 - limit, 1.0 - lo, 300),
                ]
            )
        )
        vals = np.array([proj(float(m)) for m in ms])
        finite = np.isfinite(vals)
        best = None
        for i in range(1, len(ms) - 1):
            if finite[i] and vals[i] >= vals[i - 1] and vals[i] >= vals[i + 1]:
                if best is None or vals[i] > vals[best]:
                    best = i
        if best is not None:
            arg, val = _golden_max(proj, float(ms[best - 1]), float(ms[best + 1]), 1e-10)
            if val >= -zero_tol:
                m_star = arg
    return BandReport(m1=m1, m2=m2, m_star=m_star)
