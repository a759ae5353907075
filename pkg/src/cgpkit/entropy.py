"""Entropy functionals in nats.

Classical: Shannon entropy, relative entropy, subentropy, and their
column-weighted versions for stochastic matrices. Quantum: von Neumann
entropy, relative entropy, and the relative entropy of coherence.
"""
from math import log

import numpy as np

from .core.arrays import density_matrix, probability_vector
from .core.divdiff import PowerLog, confluent_divided_difference
from .core.linalg import eigh
from .exceptions import DimensionMismatch, SupportViolation, ValidationError

SUPPORT_TOL = 1e-10


def harmonic(n: int) -> float:
    """N-th harmonic number ``1 + 1/2 + ... + 1/N``."""
    n = int(n)
    if n < 1:
        raise ValueError(f"harmonic number needs N >= 1, got {n}")
    return float(sum(1.0 / j for j in range(n, 0, -1)))


def max_subentropy(n: int) -> float:
    """Largest subentropy on the (N-1)-simplex: ``ln N - H_N + 1``."""
    return log(n) - harmonic(n) + 1.0


def _xlogx_sum(p: np.ndarray) -> np.ndarray:
    # -sum p ln p along the last axis, 0 ln 0 = 0, summed in ascending order
    p = np.sort(p, axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0.0, p * np.log(np.where(p > 0.0, p, 1.0)), 0.0)
    return -terms.sum(axis=-1)


def shannon_rows(p) -> np.ndarray:
    """Shannon entropy of every row of ``p``; no validation, for hot loops."""
    return _xlogx_sum(np.asarray(p, dtype=np.float64))


def shannon(p) -> float:
    p = probability_vector(p)
    return max(0.0, float(_xlogx_sum(p)))


def relative_entropy(p, q) -> float:
    """``H(p||q) = sum_i p_i (ln p_i - ln q_i)``."""
    p = probability_vector(p)
    q = probability_vector(q)
    if p.shape != q.shape:
        raise DimensionMismatch(f"dimension mismatch: {p.size} vs {q.size}")
    bad = (p > 0) & (q == 0)
    if bad.any():
        raise SupportViolation(f"p has mass where q vanishes at indices {np.flatnonzero(bad).tolist()}")
    mask = p > 0
    return max(0.0, float(np.sum(p[mask] * (np.log(p[mask]) - np.log(q[mask])))))


def _spectrum(rho) -> np.ndarray:
    w, _ = eigh(rho)
    return np.clip(w, 0.0, 1.0)


def von_neumann(rho) -> float:
    rho = density_matrix(rho)
    return max(0.0, float(_xlogx_sum(_spectrum(rho))))


def quantum_relative_entropy(rho, sigma) -> float:
    """``S(rho||sigma) = Tr rho (ln rho - ln sigma)``.

    The standard sign convention; nonnegative by Klein's inequality.
    Raises SupportViolation if ``rho`` has weight on an eigenvector of
    ``sigma`` with eigenvalue at most 1e-10.
    """
    rho = density_matrix(rho)
    sigma = density_matrix(sigma)
    if rho.shape != sigma.shape:
        raise DimensionMismatch(f"dimension mismatch: {rho.shape} vs {sigma.shape}")
    r = _spectrum(rho)
    s, vs = eigh(sigma)
    weights = np.real(np.einsum("ik,ij,jk->k", vs.conj(), rho, vs))
    neg_entropy = -float(_xlogx_sum(r))
    cross = 0.0
    for sk, wk in zip(s, weights):
        if sk <= SUPPORT_TOL:
            if wk > SUPPORT_TOL:
                raise SupportViolation(
                    f"rho has weight {wk:.3e} outside the support of sigma"
                )
            continue
        cross += wk * log(sk)
    return neg_entropy - cross


def subentropy(lam) -> float:
    """Subentropy ``Q(lam) = -sum_i lam_i^N ln lam_i / prod_{j != i} (lam_i - lam_j)``.

    Evaluated as minus the divided difference of ``x^N ln x`` over the
    entries of ``lam``, which handles ties and zeros exactly.
    """
    lam = probability_vector(lam)
    n = lam.size
    if n == 1:
        return 0.0
    q = -confluent_divided_difference(PowerLog(n), lam)
    # roundoff below zero at deterministic vectors
    return 0.0 if -1e-12 < q < 0.0 else q


def _check_stochastic(b) -> np.ndarray:
    b = np.asarray(b, dtype=np.float64)
    if b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise DimensionMismatch(f"stochastic matrix must be square, got shape {b.shape}")
    if b.min() < -1e-12:
        raise ValidationError(f"stochastic matrix has negative entry {b.min():.3e}")
    sums = b.sum(axis=0)
    j = int(np.argmax(np.abs(sums - 1.0)))
    if abs(sums[j] - 1.0) > 1e-10:
        raise ValidationError(f"column {j} of stochastic matrix sums to {sums[j]!r}")
    return b


def _weights(b: np.ndarray, p) -> np.ndarray:
    n = b.shape[1]
    if p is None:
        return np.full(n, 1.0 / n)
    p = probability_vector(p)
    if p.size != n:
        raise DimensionMismatch(f"weight vector has length {p.size}, matrix has {n} columns")
    return p


def weighted_entropy(b, p=None) -> float:
    """``H_p(B) = sum_j p_j H(beta_j)`` over the columns of ``B``.

    ``p=None`` means uniform weights, giving the column-averaged ``H(B)``.
    """
    b = _check_stochastic(b)
    w = _weights(b, p)
    return float(sum(wj * shannon(b[:, j]) for j, wj in enumerate(w)))


def weighted_subentropy(b, p=None) -> float:
    """``Q_p(B) = sum_j p_j Q(beta_j)``; uniform ``p`` by default."""
    b = _check_stochastic(b)
    w = _weights(b, p)
    return float(sum(wj * subentropy(b[:, j]) for j, wj in enumerate(w) if wj > 0))


def relative_entropy_of_coherence(rho) -> float:
    """``C_r(rho) = S(diag rho) - S(rho)`` in the computational basis."""
    rho = density_matrix(rho)
    diag = np.clip(np.real(np.diag(rho)), 0.0, 1.0)
    return float(_xlogx_sum(diag) - _xlogx_sum(_spectrum(rho)))


def diagonal_state(lam) -> np.ndarray:
    return np.diag(probability_vector(lam)).astype(np.complex128)


__all__ = [
    "diagonal_state",
    "harmonic",
    "max_subentropy",
    "quantum_relative_entropy",
    "relative_entropy",
    "relative_entropy_of_coherence",
    "shannon",
    "shannon_rows",
    "subentropy",
    "von_neumann",
    "weighted_entropy",
    "weighted_subentropy",
]
