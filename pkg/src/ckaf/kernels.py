"""Gaussian kernels on complex vectors, Gram matrices, and RKHS geometry.

This module provides the kernel evaluations used by the kernel LMS filters:
the complex Gaussian kernel, its real-input restriction, and a linear kernel
used as a diagnostic swap-in. It also builds Gram matrices, checks positive
semidefiniteness spectrally, and computes squared RKHS distances between
feature-space images of points.

Conventions
-----------
The complex Gaussian kernel with width ``sigma`` is

    kappa(z, w) = exp(-sum_i (z_i - conj(w_i))**2 / sigma**2)

where the square is the complex square, not the squared modulus. The kernel
is Hermitian, ``kappa(w, z) == conj(kappa(z, w))``, and its Gram matrices are
positive semidefinite, but the diagonal is not identically one:

    kappa(z, z) = exp(4 * sum_i Im(z_i)**2 / sigma**2) >= 1

with equality only for real ``z``. Code that assumes unit self-kernels
(as holds for the real Gaussian kernel) will be wrong off the real subspace.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

COMPLEX_GAUSSIAN = "complex-gaussian"
REAL_GAUSSIAN = "real-gaussian"
LINEAR = "linear"

_FAMILIES = (COMPLEX_GAUSSIAN, REAL_GAUSSIAN, LINEAR)


@dataclass(frozen=True)
class KernelSpec:
    """Kernel family plus width parameter.

    Parameters
    ----------
    family : str
        One of ``"complex-gaussian"``, ``"real-gaussian"`` or ``"linear"``.
        The linear family ``kappa(z, w) = sum_i z_i * conj(w_i)`` ignores
        ``sigma``; it exists so a kernel filter can be compared against an
        explicit-weight LMS filter operating on the raw input space.
    sigma : float
        Width of the Gaussian families. Must be positive.
    """

    family: str
    sigma: float = 1.0

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(
                f"unknown kernel family {self.family!r}; expected one of {_FAMILIES}"
            )
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")


def complex_gaussian(sigma: float) -> KernelSpec:
    """Shorthand for ``KernelSpec("complex-gaussian", sigma)``."""
    return KernelSpec(COMPLEX_GAUSSIAN, sigma)


def real_gaussian(sigma: float) -> KernelSpec:
    """Shorthand for ``KernelSpec("real-gaussian", sigma)``."""
    return KernelSpec(REAL_GAUSSIAN, sigma)


def linear_kernel() -> KernelSpec:
    """Shorthand for the linear diagnostic kernel."""
    return KernelSpec(LINEAR)


def _as_vector(z) -> np.ndarray:
    v = np.asarray(z, dtype=np.complex128)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("expected a 1-D vector with at least one component")
    return v


def _as_pair(z, w):
    zv, wv = _as_vector(z), _as_vector(w)
    if zv.shape != wv.shape:
        raise ValueError(
            f"dimension mismatch: {zv.shape[0]} vs {wv.shape[0]} components"
        )
    return zv, wv


def _require_real(v: np.ndarray, name: str):
    if np.any(v.imag != 0.0):
        raise ValueError(f"{name} must have zero imaginary parts for the real kernel")


def eval_complex_gaussian(z, w, spec: KernelSpec) -> complex:
    """Evaluate the complex Gaussian kernel kappa(z, w).

    Parameters
    ----------
    z, w : array_like of complex, shape (nu,)
        Input vectors of equal length.
    spec : KernelSpec
        Must have ``family == "complex-gaussian"``.

    Returns
    -------
    complex
        ``exp(-sum_i (z_i - conj(w_i))**2 / sigma**2)``. For real inputs the
        value is real and lies in (0, 1]; for complex inputs the modulus may
        exceed 1.
    """
    if spec.family != COMPLEX_GAUSSIAN:
        raise ValueError(f"spec has family {spec.family!r}, expected {COMPLEX_GAUSSIAN!r}")
    zv, wv = _as_pair(z, w)
    diff = zv - np.conj(wv)
    return complex(np.exp(-np.sum(diff * diff) / spec.sigma**2))


def eval_real_gaussian(x, y, spec: KernelSpec) -> float:
    """Evaluate the real Gaussian kernel on real-valued inputs.

    Inputs may be stored with complex dtype but must have zero imaginary
    parts. The value equals ``exp(-||x - y||**2 / sigma**2)``, which is the
    restriction of the complex Gaussian kernel to the real subspace.
    """
    if spec.family != REAL_GAUSSIAN:
        raise ValueError(f"spec has family {spec.family!r}, expected {REAL_GAUSSIAN!r}")
    xv, yv = _as_pair(x, y)
    _require_real(xv, "x")
    _require_real(yv, "y")
    d = xv.real - yv.real
    return float(np.exp(-np.sum(d * d) / spec.sigma**2))


def kernel_value(z, w, spec: KernelSpec) -> complex:
    """Evaluate kappa(z, w) for any supported family.

    Dispatches to the family-specific rule; the linear family returns
    ``sum_i z_i * conj(w_i)``.
    """
    if spec.family == COMPLEX_GAUSSIAN:
        return eval_complex_gaussian(z, w, spec)
    if spec.family == REAL_GAUSSIAN:
        return complex(eval_real_gaussian(z, w, spec))
    zv, wv = _as_pair(z, w)
    return complex(np.sum(zv * np.conj(wv)))


def kernel_vector(z, centers: np.ndarray, spec: KernelSpec) -> np.ndarray:
    """Evaluate kappa(z, c) against every row of a center matrix.

    This is the hot-loop primitive of the kernel filters: one call per
    filtering step replaces a Python loop over stored centers.

    Parameters
    ----------
    z : array_like of complex, shape (nu,)
        Query vector.
    centers : ndarray, shape (m, nu)
        Stored centers, one per row.
    spec : KernelSpec

    Returns
    -------
    ndarray, shape (m,)
        ``[kappa(z, centers[0]), ..., kappa(z, centers[m-1])]``. Matches
        per-pair evaluation of the scalar functions to rounding.
    """
    zv = _as_vector(z)
    c = np.asarray(centers, dtype=np.complex128)
    if c.ndim != 2 or c.shape[1] != zv.shape[0]:
        raise ValueError(
            f"centers must have shape (m, {zv.shape[0]}), got {c.shape}"
        )
    if spec.family == COMPLEX_GAUSSIAN:
        diff = zv[None, :] - np.conj(c)
        return np.exp(-np.sum(diff * diff, axis=1) / spec.sigma**2)
    if spec.family == REAL_GAUSSIAN:
        _require_real(zv, "z")
        _require_real(c, "centers")
        d = zv.real[None, :] - c.real
        return np.exp(-np.sum(d * d, axis=1) / spec.sigma**2).astype(np.complex128)
    return np.conj(c) @ zv


def self_kernel(z, spec: KernelSpec) -> float:
    """Evaluate kappa(z, z), which is real for every supported family.

    For the complex Gaussian family this is ``exp(4 * sum Im(z)^2 / sigma^2)``,
    the squared RKHS norm of the feature image of ``z``. It grows without
    bound in the imaginary parts, which is what destabilizes large step sizes
    in the kernel LMS update.
    """
    zv = _as_vector(z)
    if spec.family == COMPLEX_GAUSSIAN:
        return float(np.exp(4.0 * np.sum(zv.imag**2) / spec.sigma**2))
    if spec.family == REAL_GAUSSIAN:
        _require_real(zv, "z")
        return 1.0
    return float(np.sum(zv.real**2 + zv.imag**2))


def gram(points, spec: KernelSpec) -> np.ndarray:
    """Build the N x N Gram matrix K[i, j] = kappa(points[i], points[j]).

    Parameters
    ----------
    points : sequence of array_like, or ndarray of shape (N, nu)
        At least one point; all points must share one dimension.
    spec : KernelSpec

    Returns
    -------
    ndarray, shape (N, N)
        Hermitian matrix with a real diagonal. Complex dtype for the
        complex-Gaussian and linear families, float for the real family.
    """
    p = np.asarray(points, dtype=np.complex128)
    if p.ndim == 1:
        # a flat sequence is read as N scalar points in C^1
        p = p[:, None]
    if p.ndim != 2 or p.shape[0] == 0 or p.shape[1] == 0:
        raise ValueError("points must be a non-empty (N, nu) collection")
    if spec.family == COMPLEX_GAUSSIAN:
        diff = p[:, None, :] - np.conj(p)[None, :, :]
        return np.exp(-np.sum(diff * diff, axis=-1) / spec.sigma**2)
    if spec.family == REAL_GAUSSIAN:
        _require_real(p, "points")
        d = p.real[:, None, :] - p.real[None, :, :]
        return np.exp(-np.sum(d * d, axis=-1) / spec.sigma**2)
    return p @ np.conj(p).T


def is_positive_semidefinite(K, tol: float = 1e-10) -> bool:
    """Spectral positive-semidefiniteness test for a Hermitian matrix.

    Returns True when the minimum eigenvalue is at least
    ``-tol * (1 + |trace(K)|)``. The tolerance scales with the trace so the
    test stays meaningful for Gram matrices whose diagonal is far from unit.

    Raises
    ------
    ValueError
        If ``K`` is not square or not Hermitian to within 1e-12.
    """
    M = np.asarray(K)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if not np.allclose(M, np.conj(M).T, rtol=1e-12, atol=1e-12):
        raise ValueError("matrix is not Hermitian")
    eigenvalues = np.linalg.eigvalsh(M)
    bound = -tol * (1.0 + abs(float(np.trace(M).real)))
    return bool(eigenvalues.min() >= bound)


def rkhs_distance_sq(z, c, spec: KernelSpec) -> float:
    """Squared RKHS distance between the feature images of z and c.

    Expands ``||phi(z) - phi(c)||^2`` through the reproducing property as

        kappa(z, z) + kappa(c, c) - 2 * Re kappa(c, z)

    and clamps tiny negative rounding results to zero, so callers comparing
    against a novelty threshold never see a spurious negative. The square
    root is left to the caller; the filters compare squared values.
    """
    zv, cv = _as_pair(z, c)
    value = (
        self_kernel(zv, spec)
        + self_kernel(cv, spec)
        - 2.0 * kernel_value(cv, zv, spec).real
    )
    return max(0.0, float(value))
