"""Dense complex linear algebra primitives used throughout the toolkit.

All routines operate on 2-D complex ndarrays and are pure functions.
Tolerances are absolute-relative hybrids: a residual passes at ``tol`` when
it is at most ``tol * max(1, scale)`` for the natural scale of the input.
"""

import numpy as np

from .errors import DomainError, NumericError, ShapeError

__all__ = [
    "det",
    "pfaffian",
    "hermitian_spectrum",
    "singular_values",
    "psd_sqrt",
    "random_unitary",
]


def as_matrix(m) -> np.ndarray:
    """Coerce to a finite 2-D complex matrix."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a)):
        raise ShapeError("matrix contains non-finite entries")
    return a


def _square(m) -> np.ndarray:
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {a.shape}")
    return a


def hybrid_tol(tol: float, scale: float) -> float:
    return tol * max(1.0, scale)


def det(m) -> complex:
    """Determinant of a square complex matrix (pivoted LU)."""
    return complex(np.linalg.det(_square(m)))


def pfaffian(a, tol: float = 1e-12) -> complex:
    """Pfaffian of an antisymmetric matrix via skew-symmetric elimination.

    The matrix is reduced to skew tridiagonal form with Gauss transforms and
    partial pivoting; the Pfaffian is the signed product of the resulting
    superdiagonal pivots.  Satisfies ``pfaffian(a)**2 == det(a)`` up to
    roundoff.  Odd-dimensional input returns exactly 0.
    """
    a = _square(a)
    scale = np.linalg.norm(a)
    if np.linalg.norm(a + a.T) > hybrid_tol(tol, scale):
        raise ShapeError("matrix is not antisymmetric within tolerance")
    n = a.shape[0]
    if n % 2 == 1:
        return 0j
    a = a.copy()
    value = 1.0 + 0j
    for k in range(0, n - 1, 2):
        pivot = k + 1 + int(np.abs(a[k + 1:, k]).argmax())
        if pivot != k + 1:
            a[[k + 1, pivot], k:] = a[[pivot, k + 1], k:]
            a[k:, [k + 1, pivot]] = a[k:, [pivot, k + 1]]
            value = -value
        if a[k + 1, k] == 0.0:
            return 0j
        value *= a[k, k + 1]
        if k + 2 < n:
            gauss = a[k, k + 2:] / a[k, k + 1]
            a[k + 2:, k + 2:] += np.outer(gauss, a[k + 2:, k + 1])
            a[k + 2:, k + 2:] -= np.outer(a[k + 2:, k + 1], gauss)
    return complex(value)


def hermitian_spectrum(h, tol: float = 1e-12) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix."""
    h = _square(h)
    scale = np.linalg.norm(h)
    if np.linalg.norm(h - h.conj().T) > hybrid_tol(tol, scale):
        raise ShapeError("matrix is not Hermitian within tolerance")
    try:
        return np.linalg.eigvalsh(h)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigenvalue iteration failed: {exc}") from exc


def singular_values(m) -> np.ndarray:
    """Descending nonnegative singular values."""
    try:
        return np.linalg.svd(as_matrix(m), compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"singular value iteration failed: {exc}") from exc


def psd_sqrt(h, tol: float = 1e-10) -> np.ndarray:
    """Hermitian square root of a positive semidefinite matrix.

    Eigenvalues below 0 (but above ``-tol`` relative) are clamped to 0 before
    rooting; genuinely indefinite input raises :class:`DomainError`.
    """
    h = _square(h)
    scale = np.linalg.norm(h)
    if np.linalg.norm(h - h.conj().T) > hybrid_tol(1e-12, scale):
        raise ShapeError("matrix is not Hermitian within tolerance")
    evals, evecs = np.linalg.eigh(h)
    if evals.size and evals[0] < -hybrid_tol(tol, scale):
        raise DomainError(f"matrix is indefinite (min eigenvalue {evals[0]:.3e})")
    root = np.sqrt(np.clip(evals, 0.0, None))
    return (evecs * root) @ evecs.conj().T


def psd_inv_sqrt(h, tol: float = 1e-10) -> np.ndarray:
    """Inverse Hermitian square root of a positive definite matrix."""
    h = _square(h)
    scale = np.linalg.norm(h)
    evals, evecs = np.linalg.eigh(h)
    if evals.size == 0 or evals[0] <= hybrid_tol(tol, scale):
        raise DomainError(f"matrix is not safely positive definite (min eigenvalue {evals[0] if evals.size else 'n/a'})")
    return (evecs / np.sqrt(evals)) @ evecs.conj().T


def random_unitary(n: int, seed) -> np.ndarray:
    """Haar-ish random unitary: QR of a complex Gaussian with the R diagonal
    phase-normalized.  Deterministic for a given seed."""
    if n < 1:
        raise ShapeError("n must be >= 1")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_orthogonal(n: int, seed) -> np.ndarray:
    """Random real orthogonal matrix, deterministic for a given seed."""
    if n < 1:
        raise ShapeError("n must be >= 1")
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diagonal(r))
