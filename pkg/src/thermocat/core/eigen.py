"""
Cyclic Jacobi eigensolver for small dense matrices.

Complex Hermitian matrices H = X + iY are handled through their real symmetric
embedding [[X, −Y], [Y, X]], whose spectrum is that of H with every eigenvalue
doubled. Matrix functions f(H) are read back from f applied to the embedding.
"""

import logging
from collections.abc import Callable

import numpy as np

from thermocat.core.config import get_config
from thermocat.core.exceptions import ConvergenceError, ValidationError

logger = logging.getLogger(__name__)

MAX_SWEEPS = 100


def jacobi_eigh(matrix: np.ndarray, tolerance: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """
    Eigen-decompose a real symmetric matrix with cyclic Jacobi rotations.

    Returns ascending eigenvalues ``w`` and orthonormal eigenvectors as the
    columns of ``v``, so that ``matrix ≈ v @ diag(w) @ v.T``. Sweeps stop once
    the off-diagonal Frobenius norm drops below ``tolerance`` times the full norm.
    """
    a = np.array(matrix, dtype=float, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"Expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError("Matrix has non-finite entries")
    if not np.allclose(a, a.T, atol=1e-12):
        raise ValidationError("Matrix is not symmetric")
    if tolerance is None:
        tolerance = get_config().get("divergences.jacobi_tolerance", 1e-12)

    n = a.shape[0]
    v = np.eye(n)
    scale = max(np.linalg.norm(a), 1.0)

    for sweep in range(MAX_SWEEPS):
        off = np.sqrt(np.sum(np.triu(a, 1) ** 2))
        if off <= tolerance * scale:
            logger.debug("Jacobi converged after %d sweeps (n=%d)", sweep, n)
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        raise ConvergenceError("Jacobi eigensolver did not converge", iterations=MAX_SWEEPS)

    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def embed_hermitian(matrix: np.ndarray) -> np.ndarray:
    """Real symmetric 2n×2n embedding of a complex Hermitian n×n matrix."""
    h = np.asarray(matrix, dtype=complex)
    x, y = h.real, h.imag
    return np.block([[x, -y], [y, x]])


def hermitian_eigvalsh(matrix: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a complex Hermitian matrix."""
    n = np.asarray(matrix).shape[0]
    w, _ = jacobi_eigh(embed_hermitian(matrix))
    # the embedding repeats each eigenvalue twice
    return w.reshape(n, 2).mean(axis=1)


def hermitian_function(matrix: np.ndarray, fn: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """f(H) for a complex Hermitian H, with ``fn`` applied elementwise to eigenvalues."""
    n = np.asarray(matrix).shape[0]
    w, v = jacobi_eigh(embed_hermitian(matrix))
    f_embedded = (v * fn(w)) @ v.T
    return f_embedded[:n, :n] + 1j * f_embedded[n:, :n]
