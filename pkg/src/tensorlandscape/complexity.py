"""Closed-form landscape complexity for rank-one spiked tensor PCA.

A symmetric order-k tensor observation Y = lam * u^(x)k + noise, with the
noise a symmetrized iid Gaussian array scaled so that the sphere-constrained
objective f(sigma) = <Y, sigma^(x)k> has noise variance 1/(2n), produces an
energy landscape whose expected critical-point counts grow (or decay)
exponentially in the dimension n.  This module evaluates the two exponential
growth rates as functions of the overlap m = <sigma, u> and the objective
value x = f(sigma):

* ``s_star(params, m, x)``  -- all critical points,
* ``s_zero(params, m, x)``  -- local maxima only.

The local-maximum rate subtracts ``ldp_rate(theta, t)``, the large-deviation
cost for the largest eigenvalue of a rank-one additively deformed GOE matrix
to sit at ``t`` below its typical location ``bbp_edge(theta) = theta + 1/theta``.
The coordinate maps ``theta_of_m`` / ``t_of_x`` translate landscape
coordinates (m, x) into the deformation strength and spectral shift of the
conditional Hessian.  ``phi_star`` is the log-potential of the semicircle
law, the n -> oo limit of (1/n) log E|det(GOE - x)|.

Conventions used throughout:

* extended reals are IEEE floats; -inf is a legitimate value of a complexity
  (it marks exponentially impossible regions) and +inf a legitimate value of
  the rate function.  No sentinel encodings.
* every function broadcasts over numpy arrays and returns a Python float for
  scalar input.
* inputs must be finite; domain violations raise ValueError.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ModelParams",
    "LandscapePoint",
    "MatrixCoords",
    "matrix_coords",
    "phi_star",
    "ldp_rate",
    "theta_of_m",
    "t_of_x",
    "s_star",
    "s_zero",
    "stieltjes_semicircle",
    "j_spherical",
    "bbp_edge",
]


@dataclass(frozen=True)
class ModelParams:
    """Tensor order ``k`` (integer, >= 3) and signal-to-noise ratio ``lam`` (>= 0)."""

    k: int
    lam: float

    def __post_init__(self) -> None:
        if not isinstance(self.k, (int, np.integer)) or isinstance(self.k, bool):
            raise ValueError(f"tensor order k must be an integer, got {self.k!r}")
        if self.k < 3:
            raise ValueError(f"tensor order k must be >= 3, got {self.k}")
        lam = float(self.lam)
        if not math.isfinite(lam) or lam < 0.0:
            raise ValueError(f"signal-to-noise lam must be finite and >= 0, got {self.lam!r}")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "lam", lam)


@dataclass(frozen=True)
class LandscapePoint:
    """A point of the landscape plane: overlap ``m`` in [-1, 1], objective value ``x``."""

    m: float
    x: float

    def __post_init__(self) -> None:
        m, x = float(self.m), float(self.x)
        if not math.isfinite(m) or abs(m) > 1.0:
            raise ValueError(f"overlap m must be finite with |m| <= 1, got {self.m!r}")
        if not math.isfinite(x):
            raise ValueError(f"objective value x must be finite, got {self.x!r}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "x", x)


@dataclass(frozen=True)
class MatrixCoords:
    """Conditional-Hessian coordinates: rank-one strength ``theta``, spectral shift ``t``."""

    theta: float
    t: float


def matrix_coords(params: ModelParams, point: LandscapePoint) -> MatrixCoords:
    """Map a landscape point (m, x) to the (theta, t) coordinates of its Hessian law."""
    return MatrixCoords(theta=theta_of_m(params, point.m), t=t_of_x(params, point.x))


def _as_finite_array(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    return arr


def _maybe_scalar(arr: np.ndarray):
    return float(arr) if np.ndim(arr) == 0 else arr


def phi_star(x):
    """Log-potential of the semicircle law: integral of log|y - x| sigma_sc(dy).

    Equals x^2/4 - 1/2 inside the support (|x| <= 2); outside, the extra
    terms -(|x|/4) sqrt(x^2-4) + log((|x| + sqrt(x^2-4))/2) keep the function
    continuous at the edges.  Even in x.
    """
    ax = np.abs(_as_finite_array(x, "x"))
    s = np.sqrt(np.maximum(ax * ax - 4.0, 0.0))
    inside = 0.25 * ax * ax - 0.5
    with np.errstate(divide="ignore"):
        outside = inside - 0.25 * ax * s + np.log(0.5 * (ax + s))
    return _maybe_scalar(np.where(ax <= 2.0, inside, outside))


def _sqrt_shifted_antideriv(y: np.ndarray) -> np.ndarray:
    # antiderivative of sqrt(y^2 - 4) on y >= 2:
    #   (y/2) sqrt(y^2-4) - 2 log((y + sqrt(y^2-4))/2),  zero at y = 2
    s = np.sqrt(np.maximum(y * y - 4.0, 0.0))
    return 0.5 * y * s - 2.0 * np.log(0.5 * (y + s))


def bbp_edge(theta):
    """Typical largest eigenvalue theta + 1/theta of GOE + theta e1 e1^T, for theta > 0."""
    th = _as_finite_array(theta, "theta")
    if np.any(th <= 0.0):
        raise ValueError("bbp_edge requires theta > 0")
    return _maybe_scalar(th + 1.0 / th)


def ldp_rate(theta, t):
    """Large-deviation rate for the top eigenvalue of theta e1 e1^T + GOE to sit at t.

    Speed-n rate of P(lambda_max <= t).  Three regimes:

    * t < 2: +inf.  Pushing the whole semicircle bulk below its edge costs
      more than e^(-cn); at this speed the event is impossible.
    * theta <= 1, t >= 2, or theta > 1, t >= theta + 1/theta: 0.  The typical
      top eigenvalue already sits at or below t.
    * theta > 1, 2 <= t < theta + 1/theta: the cost of dragging the rank-one
      outlier from its typical location rho = theta + 1/theta down to t,

        (1/4) int_rho^t sqrt(y^2-4) dy - (theta/2)(t - rho) + (t^2 - rho^2)/8.

    Nonnegative, convex and strictly decreasing in t on [2, rho), vanishing
    smoothly at t = rho.
    """
    th = _as_finite_array(theta, "theta")
    tt = _as_finite_array(t, "t")
    th, tt = np.broadcast_arrays(th, tt)
    out = np.where(tt < 2.0, np.inf, 0.0)

    th_safe = np.where(th > 1.0, th, 2.0)
    rho = th_safe + 1.0 / th_safe
    mid = (th > 1.0) & (tt >= 2.0) & (tt < rho)
    t_safe = np.where(mid, tt, 2.0)
    val = (
        0.25 * (_sqrt_shifted_antideriv(t_safe) - _sqrt_shifted_antideriv(rho))
        - 0.5 * th_safe * (t_safe - rho)
        + 0.125 * (t_safe * t_safe - rho * rho)
    )
    # rounding near the smooth zero at t = rho can leave val at -1e-17; clamp
    out = np.where(mid, np.maximum(val, 0.0), out)
    return _maybe_scalar(out)


def theta_of_m(params: ModelParams, m):
    """Rank-one deformation strength of the conditional Hessian at overlap m."""
    k, lam = params.k, params.lam
    mm = _as_finite_array(m, "m")
    if np.any(np.abs(mm) > 1.0):
        raise ValueError("overlap m must satisfy |m| <= 1")
    return _maybe_scalar(math.sqrt(2.0 * k * (k - 1.0)) * lam * mm ** (k - 2) * (1.0 - mm * mm))


def t_of_x(params: ModelParams, x):
    """Spectral shift of the conditional Hessian at objective value x."""
    k = params.k
    xx = _as_finite_array(x, "x")
    return _maybe_scalar(math.sqrt(2.0 * k / (k - 1.0)) * xx)


def _s_star_arrays(params: ModelParams, m, x) -> np.ndarray:
    k, lam = params.k, params.lam
    mm = _as_finite_array(m, "m")
    if np.any(np.abs(mm) > 1.0):
        raise ValueError("overlap m must satisfy |m| <= 1")
    xx = _as_finite_array(x, "x")
    mm, xx = np.broadcast_arrays(mm, xx)

    # |m| = 1 is exponentially unreachable: the (1-m^2)^((n-3)/2) area factor
    # kills the count.  Return -inf there without touching the log.
    edge = np.abs(mm) >= 1.0
    m_safe = np.where(edge, 0.0, mm)
    one_minus = 1.0 - m_safe * m_safe
    mk = m_safe**k
    val = (
        0.5 * (math.log(k - 1.0) + 1.0)
        + 0.5 * np.log(one_minus)
        - k * lam * lam * m_safe ** (2 * k - 2) * one_minus
        - (xx - lam * mk) ** 2
        + phi_star(math.sqrt(2.0 * k / (k - 1.0)) * xx)
    )
    return np.where(edge, -np.inf, val)


def s_star(params: ModelParams, m, x):
    """Exponential growth rate of the expected number of critical points near (m, x).

    Finite for |m| < 1, exactly -inf at |m| = 1.  At m = 0 the rate is
    independent of lam; its maximum over x is (1/2) log(k-1), attained at x = 0.
    """
    return _maybe_scalar(_s_star_arrays(params, m, x))


def s_zero(params: ModelParams, m, x):
    """Exponential growth rate of the expected number of local maxima near (m, x).

    Equals ``s_star`` minus the top-eigenvalue cost
    ``ldp_rate(theta_of_m(m), t_of_x(x))``; in particular it is -inf wherever
    t_of_x(x) < 2, i.e. for x below sqrt(2(k-1)/k), where a critical point
    cannot be a local maximum at exponential scale.
    """
    star = _s_star_arrays(params, m, x)
    cost = ldp_rate(theta_of_m(params, m), t_of_x(params, x))
    # star = -inf (overlap edge) and cost = +inf combine to -inf under IEEE
    # arithmetic, which is the intended reading: the region is unreachable.
    return _maybe_scalar(star - cost)


def stieltjes_semicircle(z):
    """Stieltjes transform of the semicircle law at real z with |z| >= 2.

    (z - sign(z) sqrt(z^2-4))/2: the branch that behaves like 1/z at infinity.
    Functional inverse of w -> w + 1/w on (0, 1], so the R-transform of the
    semicircle law is the identity.
    """
    zz = _as_finite_array(z, "z")
    if np.any(np.abs(zz) < 2.0):
        raise ValueError("stieltjes_semicircle is real only for |z| >= 2")
    s = np.sqrt(zz * zz - 4.0)
    return _maybe_scalar(0.5 * (zz - np.sign(zz) * s))


def j_spherical(x, theta):
    """Limit of (1/n) log of the rank-one spherical integral at edge location x >= 2.

    For a deformation of strength theta > 0 against a spectrum with semicircle
    limit and largest eigenvalue at x:

    * theta <= 1 and x <= theta + 1/theta:  theta^2 / 4,
    * otherwise: (theta x - 1 - log(theta) - phi_star(x)) / 2.

    Continuous across both branch boundaries.
    """
    xx = _as_finite_array(x, "x")
    th = _as_finite_array(theta, "theta")
    if np.any(xx < 2.0):
        raise ValueError("j_spherical requires x >= 2")
    if np.any(th <= 0.0):
        raise ValueError("j_spherical requires theta > 0")
    xx, th = np.broadcast_arrays(xx, th)
    low = (th <= 1.0) & (xx <= th + 1.0 / th)
    val = 0.5 * (th * xx - 1.0 - np.log(th) - phi_star(xx))
    return _maybe_scalar(np.where(low, 0.25 * th * th, val))
