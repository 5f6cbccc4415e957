"""Direct simulation of the spiked tensor objective on the sphere.

Everything here works with an explicit dense symmetric tensor

    Y = lam * u^(x)k + W / sqrt(2n),

where W is an iid Gaussian array averaged over all k! index-position
permutations.  With that normalization f(sigma) = <Y, sigma^(x)k> has noise
variance 1/(2n) at every unit sigma, matching the scaling under which the
complexity formulas of the sibling modules are exact.

Provided tools: Riemannian gradient and Hessian of f on the unit sphere
(the Hessian in an explicit orthonormal tangent basis, so its eigenvalues
classify critical points), tensor power iteration, projected gradient ascent
with backtracking, and a multi-start Newton search that inventories critical
points with their Morse index.

Dense storage keeps the code transparent; it is meant for desk-scale
dimensions (n^k memory), not production tensor decomposition.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SpikedTensor",
    "CriticalPointRecord",
    "AscentTrace",
    "DegenerateIterateError",
    "make_spiked_tensor",
    "noiseless_tensor",
    "objective",
    "tangent_basis",
    "riemannian_grad",
    "riemannian_hess",
    "power_iteration",
    "gradient_ascent",
    "find_critical_points",
    "landscape_histogram",
]


class DegenerateIterateError(RuntimeError):
    """Raised when an iteration produces a vector it cannot renormalize."""


@dataclass
class SpikedTensor:
    """A realized observation: dimension, order, planted direction, dense data."""

    n: int
    k: int
    u: np.ndarray
    data: np.ndarray


@dataclass
class CriticalPointRecord:
    """One located critical point.

    ``index`` counts tangent-Hessian eigenvalues above the zero threshold, so
    index 0 is a local maximum (negative semidefinite up to the threshold);
    ``m`` is the overlap with the planted direction; ``iters`` the Newton
    iterations spent by the start that found it.
    """

    sigma: np.ndarray
    f_value: float
    grad_norm: float
    index: int
    m: float
    iters: int = 0


@dataclass
class AscentTrace:
    """Objective values along accepted ascent steps, plus termination info."""

    f_values: np.ndarray
    grad_norm: float
    iters: int
    converged: bool


def _check_unit(v: np.ndarray, name: str, tol: float = 1e-12) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"{name} must be a vector")
    if abs(float(np.linalg.norm(v)) - 1.0) > tol:
        raise ValueError(f"{name} must have unit norm (within {tol})")
    return v


def _rank_one(u: np.ndarray, k: int) -> np.ndarray:
    out = u
    for _ in range(k - 1):
        out = np.multiply.outer(out, u)
    return out


def _symmetrize(g: np.ndarray) -> np.ndarray:
    k = g.ndim
    acc = np.zeros_like(g)
    for perm in itertools.permutations(range(k)):
        acc += np.transpose(g, perm)
    return acc / math.factorial(k)


def make_spiked_tensor(n: int, k: int, lam: float, u: np.ndarray, seed: int) -> SpikedTensor:
    """Draw Y = lam u^(x)k + sym(G)/sqrt(2n) with G iid standard Gaussian.

    The symmetrization averages G over all k! index-position permutations;
    an entry with all-distinct indices then has variance 1/(2n k!), and
    <Y - E Y, sigma^(x)k> ~ N(0, 1/(2n)) for every unit sigma.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if k < 3:
        raise ValueError("k must be >= 3")
    lam = float(lam)
    if not math.isfinite(lam) or lam < 0.0:
        raise ValueError("lam must be finite and >= 0")
    u = _check_unit(u, "u")
    if u.shape[0] != n:
        raise ValueError("u must have length n")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    g = rng.normal(size=(n,) * k)
    data = lam * _rank_one(u, k) + _symmetrize(g) / math.sqrt(2.0 * n)
    return SpikedTensor(n=n, k=k, u=u.copy(), data=data)


def noiseless_tensor(n: int, k: int, lam: float, u: np.ndarray) -> SpikedTensor:
    """The pure signal lam u^(x)k; the landscape every algorithm should ace."""
    if n < 2 or k < 3:
        raise ValueError("need n >= 2 and k >= 3")
    u = _check_unit(u, "u")
    if u.shape[0] != n:
        raise ValueError("u must have length n")
    return SpikedTensor(n=n, k=k, u=u.copy(), data=float(lam) * _rank_one(u, k))


def _contract(data: np.ndarray, sigma: np.ndarray, times: int) -> np.ndarray:
    out = data
    for _ in range(times):
        out = np.tensordot(out, sigma, axes=1)
    return out


def objective(tensor: SpikedTensor, sigma: np.ndarray) -> float:
    """f(sigma) = <Y, sigma^(x)k> for unit sigma."""
    return float(_contract(tensor.data, np.asarray(sigma, dtype=float), tensor.k))


def tangent_basis(sigma: np.ndarray) -> np.ndarray:
    """Orthonormal (n, n-1) completion of sigma from a Householder reflection.

    Columns span the tangent space of the sphere at sigma; the construction
    is deterministic in sigma.
    """
    sigma = np.asarray(sigma, dtype=float)
    n = sigma.shape[0]
    sign0 = 1.0 if sigma[0] >= 0.0 else -1.0
    v = sigma.copy()
    v[0] += sign0
    v /= np.linalg.norm(v)
    # columns 2..n of the reflection I - 2 v v^T are orthonormal and
    # orthogonal to the image of e1, which is -sign0 * sigma
    basis = -2.0 * np.outer(v, v[1:])
    basis[np.arange(1, n), np.arange(n - 1)] += 1.0
    return basis


def riemannian_grad(tensor: SpikedTensor, sigma: np.ndarray) -> np.ndarray:
    """Sphere gradient of f at unit sigma: k P_orth Y[sigma^(k-1)], an n-vector."""
    sigma = np.asarray(sigma, dtype=float)
    g = tensor.k * _contract(tensor.data, sigma, tensor.k - 1)
    return g - np.dot(g, sigma) * sigma


def riemannian_hess(
    tensor: SpikedTensor, sigma: np.ndarray, basis: np.ndarray | None = None
) -> np.ndarray:
    """Sphere Hessian of f at unit sigma in an orthonormal tangent basis.

    k(k-1) B^T Y[sigma^(k-2)] B - k f(sigma) I, symmetric of shape
    (n-1, n-1); its eigenvalue signs give the Morse index.  ``basis``
    defaults to ``tangent_basis(sigma)``; pass an explicit one to study
    specific tangent directions (e.g. the spike direction).
    """
    sigma = np.asarray(sigma, dtype=float)
    k = tensor.k
    flat = _contract(tensor.data, sigma, k - 2)
    f_val = float(sigma @ flat @ sigma)
    if basis is None:
        basis = tangent_basis(sigma)
    hess = k * (k - 1.0) * (basis.T @ flat @ basis) - k * f_val * np.eye(basis.shape[1])
    return 0.5 * (hess + hess.T)


def power_iteration(
    tensor: SpikedTensor,
    sigma0: np.ndarray,
    max_iters: int = 500,
    tol: float = 1e-10,
) -> tuple[np.ndarray, int]:
    """Tensor power iteration sigma <- Y[sigma^(k-1)] / |Y[sigma^(k-1)]|.

    Stops when successive iterates are within angular distance ``tol`` and
    returns (sigma, iterations used); raises DegenerateIterateError on a zero
    contraction (e.g. a noiseless tensor contracted orthogonally to its
    spike, whose orthogonal sphere is an invariant set the iteration cannot
    leave).
    """
    sigma = _check_unit(np.asarray(sigma0, dtype=float), "sigma0", tol=1e-8)
    sigma = sigma / np.linalg.norm(sigma)
    for it in range(1, max_iters + 1):
        w = _contract(tensor.data, sigma, tensor.k - 1)
        norm = float(np.linalg.norm(w))
        if norm == 0.0 or not math.isfinite(norm):
            raise DegenerateIterateError("power iteration produced a zero contraction")
        new = w / norm
        angle = math.acos(min(1.0, max(-1.0, float(np.dot(new, sigma)))))
        sigma = new
        if angle < tol:
            return sigma, it
    return sigma, max_iters


def gradient_ascent(
    tensor: SpikedTensor,
    sigma0: np.ndarray,
    step: float = 0.1,
    max_iters: int = 2000,
    tol: float = 1e-8,
) -> tuple[np.ndarray, AscentTrace]:
    """Projected gradient ascent with renormalization and backtracking.

    A proposed step is accepted only if it does not decrease f by more than
    1e-12 (so the recorded trace is monotone up to that tolerance); otherwise
    the step is halved.  Terminates when the gradient norm drops below
    ``tol``; running out of iterations is reported via the trace, not raised.
    """
    sigma = _check_unit(np.asarray(sigma0, dtype=float), "sigma0", tol=1e-8)
    sigma = sigma / np.linalg.norm(sigma)
    if step <= 0.0:
        raise ValueError("step must be > 0")
    f_val = objective(tensor, sigma)
    trace = [f_val]
    converged = False
    current = step
    for _ in range(max_iters):
        grad = riemannian_grad(tensor, sigma)
        grad_norm = float(np.linalg.norm(grad))
        if grad_norm < tol:
            converged = True
            break
        accepted = False
        for _ in range(60):
            cand = sigma + current * grad
            norm = float(np.linalg.norm(cand))
            if norm > 0.0:
                cand = cand / norm
                f_cand = objective(tensor, cand)
                if f_cand >= f_val - 1e-12:
                    sigma, f_val = cand, f_cand
                    trace.append(f_val)
                    accepted = True
                    break
            current *= 0.5
        if not accepted:
            break
        # cautiously regrow the working step so one bad region does not
        # freeze progress for the rest of the run
        current = min(current * 1.25, step)
    grad_norm = float(np.linalg.norm(riemannian_grad(tensor, sigma)))
    converged = converged or grad_norm < tol
    return sigma, AscentTrace(
        f_values=np.asarray(trace),
        grad_norm=grad_norm,
        iters=len(trace) - 1,
        converged=converged,
    )


#: tangent-Hessian eigenvalues above this count toward the Morse index;
#: below it they are treated as zero modes (local-max classification margin)
INDEX_ZERO_THRESHOLD = 1e-8

#: smallest singular value under which the Newton system is solved by
#: least squares instead of direct inversion
_NEWTON_SINGULAR_GUARD = 1e-10


def _newton_polish(
    tensor: SpikedTensor,
    sigma: np.ndarray,
    newton_tol: float,
    max_iters: int,
) -> tuple[np.ndarray, int] | None:
    """Drive the sphere gradient to zero from one start; None if it stalls."""
    for it in range(max_iters):
        grad = riemannian_grad(tensor, sigma)
        grad_norm = float(np.linalg.norm(grad))
        if grad_norm < newton_tol:
            return sigma, it
        basis = tangent_basis(sigma)
        gt = basis.T @ grad
        hess = riemannian_hess(tensor, sigma, basis=basis)
        smin = float(np.min(np.abs(np.linalg.eigvalsh(hess))))
        if smin < _NEWTON_SINGULAR_GUARD:
            step_t = np.linalg.lstsq(hess, -gt, rcond=None)[0]
            if not np.all(np.isfinite(step_t)) or float(np.linalg.norm(step_t)) == 0.0:
                step_t = gt  # degenerate system: fall back to a gradient step
        else:
            step_t = np.linalg.solve(hess, -gt)
        norm = float(np.linalg.norm(step_t))
        if norm > 0.5:  # keep steps local; Newton is only trusted near a root
            step_t *= 0.5 / norm
        improved = False
        for _ in range(30):
            cand = sigma + basis @ step_t
            cand /= np.linalg.norm(cand)
            cand_norm = float(np.linalg.norm(riemannian_grad(tensor, cand)))
            if cand_norm < grad_norm or cand_norm < newton_tol:
                sigma = cand
                improved = True
                break
            step_t *= 0.5
        if not improved:
            return None
    grad_norm = float(np.linalg.norm(riemannian_grad(tensor, sigma)))
    if grad_norm < newton_tol:
        return sigma, max_iters
    return None


def find_critical_points(
    tensor: SpikedTensor,
    n_starts: int = 1000,
    newton_tol: float = 1e-10,
    dedup_angle: float = 1e-6,
    seed: int = 0,
    max_newton_iters: int = 100,
) -> tuple[list[CriticalPointRecord], int]:
    """Multi-start Newton inventory of critical points.

    Starts are uniform on the sphere.  Converged points are sorted by
    (overlap, value) and deduplicated at angular distance ``dedup_angle``
    (antipodes are distinct points: for odd k they carry opposite values).
    Returns (records, number of non-convergent starts).
    """
    if n_starts < 1:
        raise ValueError("n_starts must be >= 1")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    found: list[CriticalPointRecord] = []
    failures = 0
    for _ in range(n_starts):
        start = rng.normal(size=tensor.n)
        start /= np.linalg.norm(start)
        polished = _newton_polish(tensor, start, newton_tol, max_newton_iters)
        if polished is None:
            failures += 1
            continue
        sigma, iters = polished
        grad_norm = float(np.linalg.norm(riemannian_grad(tensor, sigma)))
        eigs = np.linalg.eigvalsh(riemannian_hess(tensor, sigma))
        found.append(
            CriticalPointRecord(
                sigma=sigma,
                f_value=objective(tensor, sigma),
                grad_norm=grad_norm,
                index=int(np.sum(eigs > INDEX_ZERO_THRESHOLD)),
                m=float(np.dot(sigma, tensor.u)),
                iters=iters,
            )
        )
    found.sort(key=lambda r: (r.m, r.f_value))
    records: list[CriticalPointRecord] = []
    for rec in found:
        duplicate = False
        for kept in records:
            cosine = min(1.0, max(-1.0, float(np.dot(rec.sigma, kept.sigma))))
            if math.acos(cosine) < dedup_angle:
                duplicate = True
                break
        if not duplicate:
            records.append(rec)
    return records, failures


def landscape_histogram(
    records: list[CriticalPointRecord],
    m_bins: int = 20,
    f_bins: int = 20,
    m_range: tuple[float, float] = (-1.0, 1.0),
    f_range: tuple[float, float] | None = None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """2D histogram of local-maximum records over (overlap, value).

    Only records with Morse index 0 are binned.  ``f_range`` defaults to the
    value span of all supplied records (padded), so an empty local-max subset
    still yields a well-defined zero histogram.
    """
    if not records:
        raise ValueError("landscape_histogram needs a nonempty record list")
    if f_range is None:
        f_all = [r.f_value for r in records]
        span = max(max(f_all) - min(f_all), 1e-12)
        f_range = (min(f_all) - 0.05 * span, max(f_all) + 0.05 * span)
    maxima = [r for r in records if r.index == 0]
    m_vals = np.array([r.m for r in maxima])
    f_vals = np.array([r.f_value for r in maxima])
    counts, m_edges, f_edges = np.histogram2d(
        m_vals, f_vals, bins=[m_bins, f_bins], range=[m_range, f_range]
    )
    return counts, m_edges, f_edges
