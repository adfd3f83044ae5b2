"""
Tests for the Jacobi eigensolver.
"""

import numpy as np
import pytest

from thermocat.core.eigen import embed_hermitian, hermitian_eigvalsh, hermitian_function, jacobi_eigh
from thermocat.core.exceptions import ValidationError
from thermocat.utils.helpers import make_rng


def _random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


class TestJacobi:
    """Test cases for jacobi_eigh and the Hermitian helpers."""

    @pytest.mark.parametrize("n", [1, 2, 5, 12])
    def test_real_symmetric_matches_numpy(self, n):
        """Test eigenvalues and the reconstruction of a random symmetric matrix."""
        rng = make_rng(n)
        a = rng.normal(size=(n, n))
        a = (a + a.T) / 2

        w, v = jacobi_eigh(a)

        np.testing.assert_allclose(w, np.linalg.eigvalsh(a), atol=1e-10)
        np.testing.assert_allclose(v @ np.diag(w) @ v.T, a, atol=1e-10)
        np.testing.assert_allclose(v.T @ v, np.eye(n), atol=1e-10)

    def test_eigenvalues_ascending(self):
        """Test the ordering of returned eigenvalues."""
        w, _ = jacobi_eigh(np.diag([3.0, -1.0, 2.0]))
        assert list(w) == [-1.0, 2.0, 3.0]

    def test_rejects_bad_input(self):
        """Test non-square, non-symmetric and non-finite matrices."""
        with pytest.raises(ValidationError):
            jacobi_eigh(np.ones((2, 3)))

        with pytest.raises(ValidationError):
            jacobi_eigh(np.array([[1.0, 2.0], [0.0, 1.0]]))

        with pytest.raises(ValidationError):
            jacobi_eigh(np.array([[np.nan, 0.0], [0.0, 1.0]]))

    def test_embedding_shape(self):
        """Test the real embedding of a complex matrix."""
        h = np.array([[1.0, 1j], [-1j, 1.0]])
        e = embed_hermitian(h)
        assert e.shape == (4, 4)
        np.testing.assert_allclose(e, e.T)

    def test_complex_hermitian_eigenvalues(self):
        """Test eigenvalues of a random complex Hermitian matrix."""
        h = _random_hermitian(make_rng(3), 6)
        np.testing.assert_allclose(hermitian_eigvalsh(h), np.linalg.eigvalsh(h), atol=1e-10)

    def test_hermitian_function_square_root(self):
        """Test that the matrix square root squares back to the matrix."""
        rng = make_rng(11)
        b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        positive = b @ b.conj().T

        root = hermitian_function(positive, lambda w: np.sqrt(np.clip(w, 0.0, None)))

        np.testing.assert_allclose(root @ root, positive, atol=1e-9)
        np.testing.assert_allclose(root, root.conj().T, atol=1e-10)
