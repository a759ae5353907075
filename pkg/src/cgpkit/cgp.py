"""Coherence generating power (CGP).

CGP of a channel is the relative entropy of coherence of ``Phi(Lambda)``
averaged over incoherent states ``Lambda = diag(lambda)`` with ``lambda``
uniform on the simplex. For a unitary channel it equals the row-averaged
subentropy of the Kraus matrix, ``Q(B(U)^T)``; for a general channel it is
estimated by Monte Carlo; for unital channels ``Q(B(Phi)^T)`` is an upper
bound.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from math import cos, fsum, sin, sqrt

import numpy as np

from .channels import KrausChannel, apply, diagonal_images, dual, kraus_matrix
from .core.arrays import check_unitary
from .core.divdiff import two_point_xsq_log
from .core.linalg import eigvalsh_batch
from .core.simplex import SimplexSampler
from .entropy import (
    max_subentropy,
    quantum_relative_entropy,
    shannon_rows,
    subentropy,
    von_neumann,
)
from .exceptions import BadParameter, NotUnital

BLOCK_SIZE = 2048
BOUND_SLACK = 1e-8


@dataclass(frozen=True)
class CgpEstimate:
    mean: float
    std_error: float
    samples: int
    seed: int
    dim: int

    def to_dict(self) -> dict:
        return {"mean": self.mean, "std_error": self.std_error, "samples": self.samples, "seed": self.seed}


@dataclass(frozen=True)
class CgpBoundReport:
    estimate: CgpEstimate
    bound: float
    satisfied: bool
    slack: float

    def to_dict(self) -> dict:
        d = asdict(self)
        d["estimate"] = self.estimate.to_dict()
        return d


def row_subentropy(b) -> float:
    """``Q(B^T)``: the average subentropy of the rows of ``b``."""
    b = np.asarray(b, dtype=np.float64)
    # fsum is correctly rounded, so reordering rows cannot change the result
    return fsum(subentropy(row) for row in b) / b.shape[0]


def exact_cgp(u) -> float:
    """CGP of the unitary channel ``rho -> U rho U^dagger``, exactly."""
    u = check_unitary(u)
    return row_subentropy(np.abs(u) ** 2)


def cgp_curve_rotation(theta: float) -> float:
    """CGP of the real qubit rotation by ``theta``.

    ``(sin^4 ln sin^2 - cos^4 ln cos^2) / (cos^2 - sin^2)``, evaluated in a
    form that stays accurate where ``cos^2 = sin^2``.
    """
    c2, s2 = cos(theta) ** 2, sin(theta) ** 2
    return max(0.0, -two_point_xsq_log(c2, s2))


def cgp_curve_partial_swap(t: float) -> float:
    """CGP of the two-qubit partial swap, ``(t^2 ln t - (1-t)^2 ln(1-t)) / (2(1-2t))``."""
    if not 0.0 <= t <= 1.0:
        raise BadParameter(f"partial swap needs t in [0, 1], got {t}")
    return max(0.0, -0.5 * two_point_xsq_log(t, 1.0 - t))


def is_max_cgp_unitary(u, tol: float = 1e-10) -> bool:
    """True iff every ``|u_ij|^2`` is within ``tol`` of ``1/N``.

    Exactly these unitaries reach the top CGP value ``ln N - H_N + 1``.
    """
    u = check_unitary(u)
    n = u.shape[0]
    return bool(np.abs(np.abs(u) ** 2 - 1.0 / n).max() <= tol)


def max_cgp(n: int) -> float:
    return max_subentropy(n)


def _coherence_block(channel: KrausChannel, b: np.ndarray, images, sampler, start, count):
    lam = sampler.block(start, count)
    n = channel.dim
    # p = B lambda, accumulated column by column to stay independent of BLAS blocking
    p = np.zeros_like(lam)
    for j in range(n):
        p += lam[:, j, None] * b[None, :, j]
    if images is None:
        return shannon_rows(p) - shannon_rows(lam)
    out = np.zeros((count, n, n), dtype=np.complex128)
    for j in range(n):
        out += lam[:, j, None, None] * images[j][None]
    w = np.clip(eigvalsh_batch(out), 0.0, 1.0)
    return shannon_rows(p) - shannon_rows(w)


def coherence_samples(channel: KrausChannel, samples: int, seed: int = 0, workers: int = 1) -> np.ndarray:
    """Per-sample ``C_r(Phi(Lambda))`` for the first ``samples`` simplex draws.

    Samples are processed in fixed blocks of ``BLOCK_SIZE`` whatever the
    worker count, so the returned array is bit-identical for any ``workers``.
    For unitary channels ``S(Phi(Lambda))`` is taken as ``H(lambda)``.
    """
    if samples < 1:
        raise BadParameter("need at least one sample")
    if workers < 1:
        raise BadParameter("workers must be >= 1")
    sampler = SimplexSampler(channel.dim, seed)
    b = np.asarray(kraus_matrix(channel))
    images = None if channel.is_unitary else diagonal_images(channel)
    starts = list(range(0, samples, BLOCK_SIZE))

    def run(start):
        return _coherence_block(channel, b, images, sampler, start, min(BLOCK_SIZE, samples - start))

    if workers == 1 or len(starts) == 1:
        parts = [run(s) for s in starts]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, starts))
    return np.concatenate(parts)


def mc_cgp(channel, samples: int = 100_000, seed: int = 0, workers: int = 1) -> CgpEstimate:
    """Monte Carlo estimate of the CGP of ``channel``.

    ``channel`` may be a KrausChannel or a unitary matrix. Requires at
    least 100 samples; the standard error uses the ``ddof=1`` deviation.
    """
    if samples < 100:
        raise BadParameter(f"Monte Carlo CGP needs at least 100 samples, got {samples}")
    if not isinstance(channel, KrausChannel):
        channel = KrausChannel.from_unitary(channel)
    vals = coherence_samples(channel, samples, seed, workers)
    mean = float(vals.mean())
    se = float(vals.std(ddof=1) / sqrt(samples))
    return CgpEstimate(mean=mean, std_error=se, samples=int(samples), seed=int(seed), dim=channel.dim)


def unital_bound(channel: KrausChannel) -> float:
    """Upper bound ``Q(B(Phi)^T)`` on the CGP of a unital channel.

    Raises NotUnital when ``sum M M^dagger != I``.
    """
    if not channel.unital:
        raise NotUnital("channel is not unital: sum_mu M_mu M_mu^dagger differs from I")
    return row_subentropy(kraus_matrix(channel))


def check_unital_bound(channel: KrausChannel, samples: int = 100_000, seed: int = 0, workers: int = 1) -> CgpBoundReport:
    bound = unital_bound(channel)
    est = mc_cgp(channel, samples, seed, workers)
    ok = est.mean <= bound + 3.0 * est.std_error + BOUND_SLACK
    return CgpBoundReport(estimate=est, bound=bound, satisfied=bool(ok), slack=bound - est.mean)


def entropy_gain_slack(channel: KrausChannel, rho) -> float:
    """``S(Phi(rho)) - S(rho) - S(rho || Phi^* Phi(rho))``; nonnegative for unital channels."""
    out = apply(channel, rho)
    back = apply(dual(channel), out)
    back = 0.5 * (back + back.conj().T)
    out = 0.5 * (out + out.conj().T)
    return von_neumann(out) - von_neumann(rho) - quantum_relative_entropy(rho, back)


__all__ = [
    "BLOCK_SIZE",
    "CgpBoundReport",
    "CgpEstimate",
    "cgp_curve_partial_swap",
    "cgp_curve_rotation",
    "check_unital_bound",
    "coherence_samples",
    "entropy_gain_slack",
    "exact_cgp",
    "is_max_cgp_unitary",
    "max_cgp",
    "mc_cgp",
    "row_subentropy",
    "unital_bound",
]
