"""Cyclic Jacobi eigensolver for complex Hermitian matrices.

The solver works on a stack of matrices at once. Every rotation is applied
elementwise and a matrix stops being rotated as soon as its own off-diagonal
norm is below threshold, so the result for one matrix never depends on what
else is in the stack. The Monte Carlo estimators rely on this for
reproducibility under any chunking.
"""
import numpy as np

from ..exceptions import NoConvergence
from .arrays import check_hermitian

OFFDIAG_TOL = 1e-12
MAX_SWEEPS = 100


def _offdiag_norm(a: np.ndarray) -> np.ndarray:
    n = a.shape[-1]
    mask = ~np.eye(n, dtype=bool)
    return np.sqrt((np.abs(a[:, mask]) ** 2).sum(axis=1))


def _rotate(a: np.ndarray, v: np.ndarray | None, p: int, q: int) -> None:
    # G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p, q); A <- G^dagger A G, V <- V G
    apq = a[:, p, q]
    mag = np.abs(apq)
    live = mag > 0.0
    safe = np.where(live, mag, 1.0)
    phase = np.where(live, np.conj(apq) / safe, 1.0)  # e^{-i phi}
    tau = (a[:, q, q].real - a[:, p, p].real) / (2.0 * safe)
    sgn = np.where(tau >= 0.0, 1.0, -1.0)
    t = np.where(live, sgn / (np.abs(tau) + np.hypot(1.0, tau)), 0.0)
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c

    g_pp = c[:, None]
    g_pq = s[:, None]
    g_qp = (-s * phase)[:, None]
    g_qq = (c * phase)[:, None]

    col_p = a[:, :, p].copy()
    col_q = a[:, :, q]
    a[:, :, p] = col_p * g_pp + col_q * g_qp
    a[:, :, q] = col_p * g_pq + col_q * g_qq

    row_p = a[:, p, :].copy()
    row_q = a[:, q, :]
    a[:, p, :] = row_p * np.conj(g_pp) + row_q * np.conj(g_qp)
    a[:, q, :] = row_p * np.conj(g_pq) + row_q * np.conj(g_qq)

    a[:, p, q] = 0.0
    a[:, q, p] = 0.0
    a[:, p, p] = a[:, p, p].real
    a[:, q, q] = a[:, q, q].real

    if v is not None:
        vp = v[:, :, p].copy()
        vq = v[:, :, q]
        v[:, :, p] = vp * g_pp + vq * g_qp
        v[:, :, q] = vp * g_pq + vq * g_qq


def _jacobi(stack: np.ndarray, vectors: bool, tol: float, max_sweeps: int):
    a = np.array(stack, dtype=np.complex128)
    batch, n, _ = a.shape
    v = np.broadcast_to(np.eye(n, dtype=np.complex128), a.shape).copy() if vectors else None
    threshold = tol * np.maximum(1.0, np.sqrt((np.abs(a) ** 2).sum(axis=(1, 2))))
    active = _offdiag_norm(a) > threshold
    sweeps = 0
    while active.any():
        if sweeps >= max_sweeps:
            raise NoConvergence(
                f"Jacobi iteration did not converge in {max_sweeps} sweeps "
                f"({int(active.sum())} of {batch} matrices still active)"
            )
        idx = np.flatnonzero(active)
        sub = a[idx]
        subv = v[idx] if vectors else None
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(sub, subv, p, q)
        a[idx] = sub
        if vectors:
            v[idx] = subv
        active[idx] = _offdiag_norm(sub) > threshold[idx]
        sweeps += 1

    w = np.real(np.diagonal(a, axis1=1, axis2=2)).copy()
    order = np.argsort(w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    if vectors:
        v = np.take_along_axis(v, order[:, None, :], axis=2)
    return w, v


def eigh(matrix, tol: float = OFFDIAG_TOL, max_sweeps: int = MAX_SWEEPS):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Parameters
    ----------
    matrix : array_like, shape (N, N)
        Hermitian to within 1e-10.
    tol : float
        Stop once the off-diagonal Frobenius norm is below
        ``tol * max(1, ||A||_F)``.
    max_sweeps : int
        Sweep budget; exceeding it raises NoConvergence.

    Returns
    -------
    w : ndarray, shape (N,)
        Eigenvalues in ascending order.
    v : ndarray, shape (N, N)
        Unitary matrix whose columns are the matching eigenvectors.
    """
    a = check_hermitian(matrix)
    a = 0.5 * (a + a.conj().T)
    w, v = _jacobi(a[None], True, tol, max_sweeps)
    return w[0], v[0]


def eigh_batch(stack, tol: float = OFFDIAG_TOL, max_sweeps: int = MAX_SWEEPS):
    """Batched :func:`eigh` over the leading axis. No Hermiticity check."""
    a = np.asarray(stack, dtype=np.complex128)
    return _jacobi(a, True, tol, max_sweeps)


def eigvalsh_batch(stack, tol: float = OFFDIAG_TOL, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    a = np.asarray(stack, dtype=np.complex128)
    return _jacobi(a, False, tol, max_sweeps)[0]
