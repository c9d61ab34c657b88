"""Matrix-side linear algebra: real SVD, complex symmetric eigendecomposition,
algebraic SVD (complex orthogonal factors, transpose pairing), singular-value
extraction, and the characteristic-coefficient quotient map.

All bilinear pairings here are transpose pairings (v^T w), never Hermitian.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .polyalg import IndeterminateError


class SpectralError(Exception):
    pass


class DegenerateSpectrumError(SpectralError):
    """Eigenvalue gap too small to proceed with the simple-spectrum route."""


class IsotropicVectorError(SpectralError):
    """An eigenvector with v^T v ~ 0 cannot be orthogonally normalized."""


@dataclass
class RealSVD:
    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray


@dataclass
class AlgebraicSVD:
    U: np.ndarray
    V: np.ndarray
    d: np.ndarray
    residual: float

    def reconstruct(self):
        n, t = self.U.shape[0], self.V.shape[0]
        D = np.zeros((n, t), dtype=complex)
        D[np.arange(n), np.arange(n)] = self.d
        return self.U @ D @ self.V.T


def svd_real(Y):
    """SVD of a real n x t matrix (n <= t) with sigma sorted nonincreasing."""
    Y = np.asarray(Y, dtype=float)
    n, t = Y.shape
    if n > t:
        raise SpectralError("expected n <= t")
    U, sigma, Vt = np.linalg.svd(Y, full_matrices=True)
    return RealSVD(U=U, sigma=sigma, V=Vt.T)


def char_poly_coeffs(B):
    """Coefficients e_1..e_n with det(lam*I - B) = sum (-1)^k e_k lam^(n-k).

    Faddeev-LeVerrier recursion; exact up to rounding, no eigensolve.
    """
    B = np.asarray(B, dtype=complex)
    n = B.shape[0]
    eye = np.eye(n, dtype=complex)
    e = np.zeros(n, dtype=complex)
    M = eye
    a_prev = None
    for k in range(1, n + 1):
        if k > 1:
            M = B @ M + a_prev * eye
        a_k = -np.trace(B @ M) / k
        e[k - 1] = (-1) ** k * a_k
        a_prev = a_k
    return e


def _eigenvalues(B):
    """Roots of the characteristic polynomial via the companion matrix."""
    e = char_poly_coeffs(B)
    n = B.shape[0]
    # det(lam I - B) = lam^n - e1 lam^(n-1) + e2 lam^(n-2) - ...
    coeffs = np.concatenate(([1.0], [(-1) ** k * e[k - 1] for k in range(1, n + 1)]))
    return np.roots(coeffs)


def _min_pairwise_gap(B, lams):
    """Smallest eigenvalue gap, taken over the companion-matrix roots and a
    direct eigenvalue computation.

    Companion roots of a characteristic polynomial with an exactly repeated
    root split by roughly eps^(1/multiplicity), far above any honest gap
    threshold; the direct eigenvalues keep such repeats tight, so the
    minimum of both estimates detects degeneracy reliably.
    """
    n = len(lams)
    if n < 2:
        return np.inf
    gap = np.inf
    for vals in (lams, np.linalg.eigvals(B)):
        for i in range(n):
            for j in range(i + 1, n):
                gap = min(gap, abs(vals[i] - vals[j]))
    return gap


def complex_sym_eigen(B, gap_tol=1e-8):
    """Eigendecomposition of a complex symmetric matrix with simple spectrum.

    Returns (eigenvalues, eigenvectors) with vectors normalized so v^T v = 1.
    Raises DegenerateSpectrumError when the spectrum is not numerically
    simple, and IsotropicVectorError on a non-normalizable eigenvector.
    """
    B = np.asarray(B, dtype=complex)
    n = B.shape[0]
    scale = max(1.0, np.linalg.norm(B))
    if np.linalg.norm(B - B.T) > 1e-10 * scale:
        raise SpectralError("matrix is not symmetric under transpose")
    lams = _eigenvalues(B)
    lams = lams[np.argsort(-np.abs(lams), kind="stable")]
    gap = _min_pairwise_gap(B, lams)
    if gap < gap_tol * scale:
        raise DegenerateSpectrumError(
            f"eigenvalue gap {gap:.3e} below threshold"
        )
    vecs = []
    for lam in lams:
        # smallest right singular vector of (B - lam I) spans the eigenspace
        _, svals, Vt = np.linalg.svd(B - lam * np.eye(n))
        v = Vt[-1].conj()
        v = _polish_eigvec(B, lam, v)
        q = v @ v
        if abs(q) < 1e-10:
            raise IsotropicVectorError(
                f"eigenvector of eigenvalue {lam:.3e} is numerically isotropic"
            )
        vecs.append(v / np.sqrt(q))
    return lams, np.column_stack(vecs)


def _polish_eigvec(B, lam, v, iters=2):
    """One or two inverse-iteration refinements of an eigenpair."""
    n = B.shape[0]
    for _ in range(iters):
        A = B - lam * np.eye(n)
        try:
            w = np.linalg.solve(A + 1e-14 * np.linalg.norm(B) * np.eye(n), v)
        except np.linalg.LinAlgError:
            return v
        nw = np.linalg.norm(w)
        if not np.isfinite(nw) or nw == 0:
            return v
        v = w / nw
    return v


def _numeric_rank(A, tol=1e-10):
    s = np.linalg.svd(np.asarray(A, dtype=complex), compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def has_algebraic_svd(A, gap_tol=1e-8):
    """'yes' / 'no' / 'indeterminate' existence verdict.

    'no' when rank(A) != rank(A A^T); 'yes' when additionally the spectrum of
    A A^T is numerically simple (sufficient for diagonalizability);
    'indeterminate' at a repeated eigenvalue, where diagonalizability cannot
    be decided in floating point.
    """
    A = np.asarray(A, dtype=complex)
    n, t = A.shape
    if n > t:
        raise SpectralError("expected n <= t")
    B = A @ A.T
    if _numeric_rank(A) != _numeric_rank(B):
        return "no"
    lams = _eigenvalues(B)
    scale = max(1.0, np.max(np.abs(lams)))
    if _min_pairwise_gap(B, lams) < gap_tol * scale:
        return "indeterminate"
    return "yes"


def _complete_orthogonal(cols, t, rng=None):
    """Extend n transpose-orthonormal columns to a full t x t complex
    orthogonal matrix by Gram-Schmidt with random complex fill."""
    if rng is None:
        rng = np.random.default_rng(7)
    basis = [np.asarray(c, dtype=complex) for c in cols]
    while len(basis) < t:
        v = rng.standard_normal(t) + 1j * rng.standard_normal(t)
        for b in basis:
            v = v - (b @ v) * b
        q = v @ v
        if abs(q) < 1e-8 * max(1.0, np.linalg.norm(v) ** 2):
            continue
        basis.append(v / np.sqrt(q))
    return np.column_stack(basis)


def algebraic_svd(A, gap_tol=1e-8):
    """A = U Diag(d) V^T with complex orthogonal U, V (transpose pairing).

    Requires a simple, nonzero spectrum of A A^T; use has_algebraic_svd
    first for the existence verdict.
    """
    A = np.asarray(A, dtype=complex)
    n, t = A.shape
    if n > t:
        raise SpectralError("expected n <= t")
    B = A @ A.T
    lams, U = complex_sym_eigen(B, gap_tol=gap_tol)
    if np.min(np.abs(lams)) < gap_tol * max(1.0, np.max(np.abs(lams))):
        raise DegenerateSpectrumError("zero algebraic singular value")
    d = np.sqrt(lams.astype(complex))
    vcols = [(A.T @ U[:, i]) / d[i] for i in range(n)]
    V = _complete_orthogonal(vcols, t)
    D = np.zeros((n, t), dtype=complex)
    D[np.arange(n), np.arange(n)] = d
    residual = np.linalg.norm(U @ D @ V.T - A) / max(1.0, np.linalg.norm(A))
    out = AlgebraicSVD(U=U, V=V, d=d, residual=float(residual))
    if residual > 1e-7:
        raise SpectralError(f"algebraic SVD residual {residual:.2e} too large")
    return out


def singular_value_vector(X):
    """Principal square roots of the eigenvalues of X X^T, sorted by
    descending magnitude, then descending real part."""
    X = np.asarray(X, dtype=complex)
    n, t = X.shape
    if n > t:
        raise SpectralError("expected n <= t")
    lams = _eigenvalues(X @ X.T)
    d = np.sqrt(lams.astype(complex))
    order = np.lexsort((-d.real, -np.abs(d)))
    return d[order]


def quotient_map(X):
    """Characteristic coefficients (e_1(XX^T), ..., e_n(XX^T))."""
    X = np.asarray(X, dtype=complex)
    n, t = X.shape
    if n > t:
        raise SpectralError("expected n <= t")
    return char_poly_coeffs(X @ X.T)


__all__ = [
    "RealSVD", "AlgebraicSVD", "SpectralError", "DegenerateSpectrumError",
    "IsotropicVectorError", "IndeterminateError", "svd_real",
    "char_poly_coeffs", "complex_sym_eigen", "has_algebraic_svd",
    "algebraic_svd", "singular_value_vector", "quotient_map",
]
