"""Validation helpers for probability vectors and complex square matrices.

Everything is a plain ``numpy.ndarray``; these functions only check and
normalize dtype/shape so that downstream code can assume clean input.
"""
import numpy as np

from ..exceptions import DimensionMismatch, NotHermitian, NotUnitary, ValidationError

PROB_ATOL = 1e-10
NEG_CLAMP = 1e-12
HERMITIAN_TOL = 1e-10
UNITARY_TOL = 1e-10


def probability_vector(p, atol: float = PROB_ATOL) -> np.ndarray:
    """Return ``p`` as a float array after checking it lies on the simplex.

    Entries in ``[-1e-12, 0)`` are clamped to zero; anything more negative,
    or a total that misses one by more than ``atol``, raises ValidationError.
    """
    p = np.array(p, dtype=np.float64)
    if p.ndim != 1 or p.size == 0:
        raise ValidationError(f"probability vector must be 1-D and nonempty, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise ValidationError("probability vector has non-finite entries")
    if p.min() < -NEG_CLAMP:
        raise ValidationError(f"probability vector has negative entry {p.min():.3e}")
    p[p < 0] = 0.0
    total = p.sum()
    if abs(total - 1.0) > atol:
        raise ValidationError(f"probability vector sums to {total!r}, not 1")
    return p


def as_square(matrix, name: str = "matrix") -> np.ndarray:
    a = np.array(matrix, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimensionMismatch(f"{name} must be a nonempty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError(f"{name} has non-finite entries")
    return a


def check_hermitian(matrix, tol: float = HERMITIAN_TOL) -> np.ndarray:
    a = as_square(matrix)
    err = np.abs(a - a.conj().T).max()
    if err > tol:
        raise NotHermitian(f"matrix is not Hermitian: max|A - A^dagger| = {err:.3e} > {tol:.0e}")
    return a


def density_matrix(rho, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, positive semidefinite."""
    from .linalg import eigh

    a = check_hermitian(rho, tol)
    tr = np.trace(a)
    if abs(tr - 1.0) > tol:
        raise ValidationError(f"density matrix trace is {tr.real:.12g}, not 1")
    w, _ = eigh(a)
    if w[0] < -1e-9:
        raise ValidationError(f"density matrix has negative eigenvalue {w[0]:.3e}")
    return a


def is_unitary(u, tol: float = UNITARY_TOL) -> bool:
    u = np.asarray(u, dtype=np.complex128)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.abs(u.conj().T @ u - np.eye(u.shape[0])).max() <= tol)


def check_unitary(u, tol: float = UNITARY_TOL) -> np.ndarray:
    u = as_square(u, "unitary")
    err = np.abs(u.conj().T @ u - np.eye(u.shape[0])).max()
    if err > tol:
        raise NotUnitary(f"unitarity check failed: max|U^dagger U - I| = {err:.3e} > {tol:.0e}")
    return u
