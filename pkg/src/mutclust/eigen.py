"""Symmetric eigensolvers for possibly indefinite operators.

Two paths: a dense oracle (LAPACK ``eigh``) for small matrices, and a
matrix-free Lanczos iteration with full reorthogonalization for the
algebraically smallest eigenpairs of a large operator.  Because the
tendency Laplacian is indefinite, "smallest non-zero" is implemented as
"smallest algebraic in the orthogonal complement of the constant
vector": the constant direction is deflated rather than skipped by
value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.linalg import eigh_tridiagonal

from .errors import AsymmetricInputError, ConvergenceError, SizeCapExceededError


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in ascending order with matching orthonormal vectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residuals: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.eigenvalues, dtype=np.float64)
        if np.any(np.diff(vals) < 0):
            raise ValueError("eigenvalues must be ascending")
        gram = self.eigenvectors.T @ self.eigenvectors
        ortho = np.max(np.abs(gram - np.eye(gram.shape[0])))
        if ortho > 1e-8:
            raise ConvergenceError(
                f"eigenvector orthogonality defect {ortho:.2e} exceeds 1e-8",
                residuals=self.residuals,
            )


class MatrixOperator:
    """Adapter exposing a symmetric matrix through the operator protocol.

    Accepts a dense ndarray or any scipy sparse matrix.
    """

    def __init__(self, mat):
        if mat.shape[0] != mat.shape[1]:
            raise ValueError("operator matrix must be square")
        self.n = mat.shape[0]
        self._mat = mat
        if sp.issparse(mat):
            diag = np.asarray(mat.diagonal(), dtype=np.float64)
            abs_rows = np.asarray(abs(mat).sum(axis=1)).ravel()
        else:
            mat = np.asarray(mat, dtype=np.float64)
            diag = np.diag(mat)
            abs_rows = np.abs(mat).sum(axis=1)
        off = abs_rows - np.abs(diag)
        self._norm_bound = float(np.max(np.abs(diag) + off, initial=0.0))
        self._shift_upper = float(np.max(diag + off, initial=0.0))

    def matvec(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(self._mat @ x).ravel()

    def norm_bound(self) -> float:
        return self._norm_bound

    def shift_upper(self) -> float:
        return self._shift_upper


def _check_symmetric(mat: np.ndarray) -> np.ndarray:
    mat = np.asarray(mat, dtype=np.float64)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise AsymmetricInputError("expected a square matrix")
    atol = 1e-10 * max(1.0, float(np.max(np.abs(mat), initial=0.0)))
    defect = float(np.max(np.abs(mat - mat.T), initial=0.0))
    if defect > atol:
        raise AsymmetricInputError(f"matrix asymmetry {defect:.2e} exceeds {atol:.2e}")
    return mat


def dense_symmetric_eig(mat: np.ndarray, max_n: int = 2000) -> Spectrum:
    """Full eigendecomposition of a dense symmetric matrix."""
    mat = _check_symmetric(mat)
    n = mat.shape[0]
    if n > max_n:
        raise SizeCapExceededError(f"dense eigensolver capped at n={max_n}, got {n}")
    vals, vecs = np.linalg.eigh(mat)
    residuals = np.linalg.norm(mat @ vecs - vecs * vals, axis=0)
    return Spectrum(eigenvalues=vals, eigenvectors=vecs, residuals=residuals)


def constant_complement_basis(n: int) -> np.ndarray:
    """Orthonormal basis of the complement of the constant vector."""
    q, _ = np.linalg.qr(np.ones((n, 1)), mode="complete")
    return q[:, 1:]


def deflated_dense_eig(mat: np.ndarray, max_n: int = 2000) -> Spectrum:
    """Dense spectrum of a symmetric matrix restricted to 1-perp.

    Oracle counterpart of the deflated iterative solver: n-1 eigenpairs,
    every eigenvector orthogonal to the constant vector.
    """
    mat = _check_symmetric(mat)
    n = mat.shape[0]
    if n > max_n:
        raise SizeCapExceededError(f"dense eigensolver capped at n={max_n}, got {n}")
    basis = constant_complement_basis(n)
    reduced = basis.T @ mat @ basis
    reduced = (reduced + reduced.T) / 2.0
    vals, small_vecs = np.linalg.eigh(reduced)
    vecs = basis @ small_vecs
    residuals = np.linalg.norm(mat @ vecs - vecs * vals, axis=0)
    return Spectrum(eigenvalues=vals, eigenvectors=vecs, residuals=residuals)


def _orthonormal_seed(n: int, k: int, deflate: bool) -> np.ndarray:
    cols = [np.ones(n)] if deflate else []
    cols += [np.eye(n)[:, j] for j in range(k + 1)]
    q, _ = np.linalg.qr(np.column_stack(cols))
    return q[:, 1:k + 1] if deflate else q[:, :k]


def smallest_eigenpairs(
    op,
    k: int,
    *,
    deflate_constant: bool = True,
    tol: float = 1e-8,
    max_iter: int = 600,
    seed: int = 0,
) -> Spectrum:
    """K algebraically smallest eigenpairs of a symmetric operator.

    ``op`` must expose ``n``, ``matvec``, ``norm_bound`` and
    ``shift_upper`` (see :class:`MatrixOperator`).  The iteration is
    Lanczos with full reorthogonalization applied to the shifted
    operator ``sigma I - L`` with a Gershgorin shift, which turns the
    smallest algebraic eigenvalues into the largest ones without
    factorizing an indefinite matrix.  With ``deflate_constant`` the
    whole iteration lives in the complement of the constant vector.

    Raises :class:`ConvergenceError` when the residual target
    ``tol * norm_bound`` is not met within ``max_iter`` Lanczos steps.
    """
    n = op.n
    dim = n - 1 if deflate_constant else n
    if k < 1:
        raise ValueError("k must be positive")
    if k > dim:
        raise ValueError(f"k={k} exceeds the operator dimension {dim}")

    norm_bound = op.norm_bound()
    if norm_bound == 0.0:
        vecs = _orthonormal_seed(n, k, deflate_constant)
        zeros = np.zeros(k)
        return Spectrum(eigenvalues=zeros, eigenvectors=vecs, residuals=zeros)

    sigma = op.shift_upper()
    resid_target = tol * norm_bound
    rng = np.random.default_rng(seed)
    m_max = min(max_iter, dim)
    basis = np.empty((n, m_max))
    alphas = np.empty(m_max)
    betas = np.zeros(m_max)
    breakdown_tol = 1e-12 * max(norm_bound, 1.0)

    def project(v: np.ndarray) -> np.ndarray:
        if deflate_constant:
            v = v - v.mean()
        return v

    q = project(rng.standard_normal(n))
    q /= np.linalg.norm(q)

    best_residuals = None
    check_every = 8
    m = 0
    while m < m_max:
        basis[:, m] = q
        w = sigma * q - op.matvec(q)
        alphas[m] = float(q @ w)
        # Full reorthogonalization, two passes for numerical safety.
        for _ in range(2):
            w -= basis[:, :m + 1] @ (basis[:, :m + 1].T @ w)
        w = project(w)
        beta = float(np.linalg.norm(w))
        m += 1

        exhausted = m >= dim
        restarted = False
        if beta <= breakdown_tol:
            # Invariant subspace found; restart with a fresh direction so
            # degenerate eigenvalues still get their full multiplicity.
            betas[m - 1] = 0.0
            if not exhausted and m < m_max:
                q = project(rng.standard_normal(n))
                for _ in range(2):
                    q -= basis[:, :m] @ (basis[:, :m].T @ q)
                nq = np.linalg.norm(q)
                if nq <= breakdown_tol:
                    exhausted = True
                else:
                    q /= nq
                    restarted = True
        else:
            betas[m - 1] = beta
            q = w / beta

        due = m % check_every == 0 or m == m_max or exhausted
        if m >= k and due and not restarted:
            theta, y = eigh_tridiagonal(alphas[:m], betas[:m - 1])
            order = np.argsort(theta)[::-1][:k]  # largest of shifted = smallest of L
            bound = np.abs(betas[m - 1]) * np.abs(y[-1, order])
            if np.all(bound <= resid_target) or m == dim or exhausted:
                vecs = basis[:, :m] @ y[:, order]
                vals = sigma - theta[order]
                asc = np.argsort(vals)
                vals, vecs = vals[asc], vecs[:, asc]
                vecs /= np.linalg.norm(vecs, axis=0)
                residuals = np.array(
                    [np.linalg.norm(op.matvec(vecs[:, i]) - vals[i] * vecs[:, i]) for i in range(k)]
                )
                best_residuals = residuals
                if np.all(residuals <= resid_target) or m == dim or exhausted:
                    return Spectrum(eigenvalues=vals, eigenvectors=vecs, residuals=residuals)
        if exhausted:
            break

    raise ConvergenceError(
        f"Lanczos did not reach residual {resid_target:.2e} within {m_max} steps",
        residuals=best_residuals,
    )


def eigengap_select(eigenvalues, k_max: int) -> int:
    """Largest consecutive gap in an ascending eigenvalue list.

    Scans cluster counts K in [2, k_max], scoring the gap between the
    (K-1)-th and K-th eigenvalue (1-based); ties go to the smaller K.
    """
    vals = np.asarray(eigenvalues, dtype=np.float64)
    if vals.ndim != 1 or vals.size < 3:
        raise ValueError("eigengap selection needs at least 3 eigenvalues")
    if not 2 <= k_max <= vals.size:
        raise ValueError(f"k_max must lie in [2, {vals.size}], got {k_max}")
    if np.any(np.diff(vals) < -1e-12):
        raise ValueError("eigenvalues must be ascending")
    gaps = vals[1:k_max] - vals[:k_max - 1]
    return int(np.argmax(gaps)) + 2
