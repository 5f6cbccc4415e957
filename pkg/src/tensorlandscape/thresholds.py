"""Explicit overlap-resolved complexity and the SNR thresholds it encodes.

Maximizing the critical-point complexity ``s_star(params, m, x)`` over the
objective value x at fixed overlap m in [0, 1) has a closed form.  The inner
maximization is of

    g(x) = a x^2 - b x + int_2^|x| sqrt(y^2 - 4) dy  (last term only if |x| > 2)

whose minimizer either stays inside |x| <= 2 (quadratic vertex b/(2a), the
"unconstrained" branch) or exits the bulk (the "edge" branch).  The two
branches give two explicit curves:

* ``s_u(params, m)``  -- valid for m below the crossover ``m_critical``,
* ``s_g(params, m)``  -- valid above it,

glued continuously by ``s_star_projection``.  The high-overlap curve s_g is
never positive; it touches zero exactly where

    m^(2k-4) (1 - m^2) = 1 / (2 k lam^2),

which has a root in [m_critical, 1] iff ``lam >= lambda_critical(k)``.  That
root, located by ``good_location_zero``, is where exponentially many
well-correlated local maxima first appear; at lam = lambda_critical the root
is a tangency at m = sqrt((k-2)/(k-1)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from .complexity import ModelParams, _as_finite_array, _maybe_scalar, _sqrt_shifted_antideriv

__all__ = [
    "ThresholdReport",
    "m_critical",
    "lambda_critical",
    "s_u",
    "s_g",
    "s_star_projection",
    "good_location_zero",
    "minimize_g",
    "f_alpha",
    "threshold_report",
]

#: absolute x-tolerance and iteration cap for the bisection in good_location_zero
_BISECT_XTOL = 1e-12
_BISECT_MAXITER = 200


@dataclass(frozen=True)
class ThresholdReport:
    """Crossover overlap, critical SNR, and (if present) the zero-touch overlap."""

    m_crossover: float
    lambda_crit: float
    good_zero: float | None


def m_critical(params: ModelParams) -> float:
    """Crossover overlap between the two projection branches.

    ((k-2) / (lam sqrt(2k(k-1))))^(1/k); may exceed 1 for small lam, in which
    case the low-overlap branch covers the whole hemisphere.  Requires lam > 0.
    """
    k, lam = params.k, params.lam
    if lam <= 0.0:
        raise ValueError("m_critical requires lam > 0")
    return ((k - 2.0) / (lam * math.sqrt(2.0 * k * (k - 1.0)))) ** (1.0 / k)


def lambda_critical(k: int) -> float:
    """Smallest SNR at which the high-overlap complexity branch touches zero.

    sqrt((k-1)^(k-1) / (2k (k-2)^(k-2))).  For k = 3 this is sqrt(2/3).
    """
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool) or k < 3:
        raise ValueError(f"tensor order k must be an integer >= 3, got {k!r}")
    return math.sqrt((k - 1.0) ** (k - 1) / (2.0 * k * (k - 2.0) ** (k - 2)))


def _validate_hemisphere(m) -> np.ndarray:
    mm = _as_finite_array(m, "m")
    if np.any((mm < 0.0) | (mm >= 1.0)):
        raise ValueError("overlap m must lie in [0, 1)")
    return mm


def s_u(params: ModelParams, m):
    """Low-overlap branch of max_x s_star(m, x), for m in [0, 1).

    (1/2) log(k-1) + (1/2) log(1-m^2) - k lam^2 m^(2k-2) (1-m^2)
    + (k/(k-2)) lam^2 m^(2k).  At m = 0 it equals (1/2) log(k-1) > 0.
    """
    k, lam = params.k, params.lam
    mm = _validate_hemisphere(m)
    m2k = mm ** (2 * k)
    val = (
        0.5 * math.log(k - 1.0)
        + 0.5 * np.log(1.0 - mm * mm)
        - k * lam * lam * mm ** (2 * k - 2) * (1.0 - mm * mm)
        + (k / (k - 2.0)) * lam * lam * m2k
    )
    return _maybe_scalar(val)


def s_g(params: ModelParams, m):
    """High-overlap branch of max_x s_star(m, x), for m in [0, 1).

    With w = sqrt(k/2) lam m^k:

    (1/2) log(1-m^2) - k lam^2 m^(2k-2) (1-m^2) - w^2 + w sqrt(1 + w^2) + asinh(w).

    (No explicit log(k-1) term: the entropy constant is absorbed by the
    logarithm inside the edge-branch minimum.)  Never positive on [0, 1);
    vanishes exactly on the solution set of m^(2k-4)(1-m^2) = 1/(2k lam^2),
    and equals f_alpha(m^2, w) identically.
    """
    k, lam = params.k, params.lam
    mm = _validate_hemisphere(m)
    w = math.sqrt(0.5 * k) * lam * mm**k
    val = (
        0.5 * np.log(1.0 - mm * mm)
        - k * lam * lam * mm ** (2 * k - 2) * (1.0 - mm * mm)
        - w * w
        + w * np.sqrt(1.0 + w * w)
        + np.arcsinh(w)
    )
    return _maybe_scalar(val)


def s_star_projection(params: ModelParams, m):
    """max_x s_star(params, m, x) on the hemisphere m in [0, 1), in closed form.

    Dispatches to ``s_u`` below the crossover ``m_critical`` and to ``s_g``
    at or above it (everything is the low branch when lam = 0).
    """
    mm = _validate_hemisphere(m)
    if params.lam == 0.0:
        return s_u(params, mm) if np.ndim(mm) else s_u(params, m)
    mc = m_critical(params)
    out = np.where(mm < mc, s_u(params, mm), s_g(params, mm))
    return _maybe_scalar(out)


def good_location_zero(params: ModelParams) -> float | None:
    """Overlap in [m_critical, 1] where the high-overlap complexity touches zero.

    Solves m^(2k-4)(1-m^2) = 1/(2k lam^2) by bisection on the decreasing side
    of the left-hand side.  Returns None when lam < lambda_critical(k) (no
    solution); returns the tangency sqrt((k-2)/(k-1)) when lam sits exactly at
    the critical SNR, where the root is double and sign-change bisection
    would be ill-posed.
    """
    k, lam = params.k, params.lam
    if lam < lambda_critical(k):  # includes lam = 0: pure noise has no good zero
        return None

    target = 1.0 / (2.0 * k * lam * lam)

    def h(m: float) -> float:
        return m ** (2 * k - 4) * (1.0 - m * m) - target

    # h is maximal at m_peak; for lam >= lambda_critical the root at or above
    # m_peak is the unique one in [m_critical, 1].
    m_peak = math.sqrt((k - 2.0) / (k - 1.0))
    if h(m_peak) <= 0.0:
        # only possible (up to rounding) at lam = lambda_critical: tangency
        return m_peak
    return float(bisect(h, m_peak, 1.0, xtol=_BISECT_XTOL, maxiter=_BISECT_MAXITER))


def minimize_g(a: float, b: float) -> tuple[float, float]:
    """Minimize g(x) = a x^2 - b x + int_2^|x| sqrt(y^2-4) dy (integral for |x| > 2).

    Requires a > 0, b > 0, so the minimizer is on the positive axis.  Returns
    (argmin, min).  For b <= 4a the quadratic vertex b/(2a) <= 2 wins and the
    minimum is -b^2/(4a).  For b > 4a the minimizer exits the bulk and solves
    2 a x - b + sqrt(x^2 - 4) = 0:

        x* = (b^2 + 4) / (2 a b + sqrt(b^2 + 4 - 16 a^2)),

    a form that stays stable at a = 1/2 where the textbook quadratic-formula
    expression degenerates.  The minimum there is
    -(b/2) x* - 2 log(((1/2 - a) x* + b/2)).
    """
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)) or a <= 0.0 or b <= 0.0:
        raise ValueError("minimize_g requires finite a > 0 and b > 0")
    if b <= 4.0 * a:
        return b / (2.0 * a), -b * b / (4.0 * a)
    disc = b * b + 4.0 - 16.0 * a * a  # > 4 whenever b > 4a
    x_star = (b * b + 4.0) / (2.0 * a * b + math.sqrt(disc))
    val = -0.5 * b * x_star - 2.0 * math.log((0.5 - a) * x_star + 0.5 * b)
    return x_star, val


def f_alpha(alpha: float, x):
    """Auxiliary one-variable family behind the zero set of ``s_g``.

    f_alpha(x) = (1/2) log(1-alpha) - 2 x^2 / alpha + x^2 + x sqrt(1+x^2) + asinh(x)
    for alpha in (0, 1) and x >= 0.  Strictly negative except at the single
    point x = alpha / (2 sqrt(1-alpha)), where it vanishes; composing with
    alpha = m^2, x = sqrt(k/2) lam m^k recovers ``s_g`` exactly, which is why
    s_g <= 0 with equality only on the explicit root set.
    """
    alpha = float(alpha)
    if not math.isfinite(alpha) or not (0.0 < alpha < 1.0):
        raise ValueError("f_alpha requires alpha in (0, 1)")
    xx = _as_finite_array(x, "x")
    if np.any(xx < 0.0):
        raise ValueError("f_alpha requires x >= 0")
    val = (
        0.5 * math.log(1.0 - alpha)
        - 2.0 * xx * xx / alpha
        + xx * xx
        + xx * np.sqrt(1.0 + xx * xx)
        + np.arcsinh(xx)
    )
    return _maybe_scalar(val)


def threshold_report(params: ModelParams) -> ThresholdReport:
    """Bundle m_critical, lambda_critical, and the zero-touch overlap (if any)."""
    return ThresholdReport(
        m_crossover=m_critical(params),
        lambda_crit=lambda_critical(params.k),
        good_zero=good_location_zero(params),
    )
