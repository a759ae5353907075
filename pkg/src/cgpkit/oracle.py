"""Numerical checks of the simplex-integral identities behind the CGP formula.

Every check returns an :class:`IdentityReport`. Equalities compare a closed
form against a Monte Carlo mean (tolerance 4 standard errors) or against
another closed form. Inequalities report the violation ``max(0, lhs - rhs)``
as ``abs_diff``, so ``passed == (abs_diff <= tolerance)`` holds for both kinds.
"""
import json
from dataclasses import asdict, dataclass
from math import exp, lgamma, sqrt

import numpy as np

from . import entropy
from .cgp import check_unital_bound, exact_cgp, mc_cgp
from .channels import kraus_matrix, random_unital_channel, random_unitary
from .core.arrays import probability_vector
from .core.divdiff import Power, confluent_divided_difference, quotient_divided_difference
from .core.simplex import SimplexSampler
from .entropy import harmonic
from .exceptions import BadParameter, NoConvergence, NotBiStochastic

MC_SIGMAS = 4.0
MC_FLOOR = 1e-10
BISTOCHASTIC_TOL = 1e-10


@dataclass(frozen=True)
class IdentityReport:
    name: str
    lhs: float
    rhs: float
    abs_diff: float
    tolerance: float
    method: str
    samples: int
    seed: int
    passed: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        del d["method"]
        return d


def _equality(name, lhs, rhs, tol, method, samples=0, seed=0) -> IdentityReport:
    diff = abs(lhs - rhs)
    return IdentityReport(name, float(lhs), float(rhs), float(diff), float(tol), method,
                          int(samples), int(seed), bool(diff <= tol))


def _upper_bound(name, lhs, rhs, tol, method, samples=0, seed=0) -> IdentityReport:
    viol = max(0.0, lhs - rhs)
    return IdentityReport(name, float(lhs), float(rhs), float(viol), float(tol), method,
                          int(samples), int(seed), bool(viol <= tol))


def _mc(values: np.ndarray) -> tuple[float, float]:
    return float(values.mean()), float(values.std(ddof=1) / sqrt(values.size))


def _check_bistochastic(b) -> np.ndarray:
    b = np.asarray(b, dtype=np.float64)
    if (
        b.ndim != 2
        or b.shape[0] != b.shape[1]
        or b.min() < -1e-12
        or np.abs(b.sum(axis=0) - 1).max() > BISTOCHASTIC_TOL
        or np.abs(b.sum(axis=1) - 1).max() > BISTOCHASTIC_TOL
    ):
        raise NotBiStochastic("matrix is not bi-stochastic to 1e-10")
    return b


# -- closed forms ------------------------------------------------------------


def gamma_ratio(n: int, alpha: float) -> float:
    """``Gamma(N) Gamma(alpha + 1) / Gamma(alpha + N)`` via log-gamma."""
    return exp(lgamma(n) + lgamma(alpha + 1.0) - lgamma(alpha + n))


def ip_alpha_closed(p, alpha: float) -> float:
    """Simplex average of ``(sum_j p_j lambda_j)^alpha``, in closed form.

    Equal to the gamma ratio times the divided difference of
    ``x^(alpha + N - 1)`` over the entries of ``p`` (ties allowed).
    """
    if alpha <= -1:
        raise BadParameter(f"alpha must exceed -1, got {alpha}")
    p = probability_vector(p)
    n = p.size
    return gamma_ratio(n, alpha) * confluent_divided_difference(Power(alpha + n - 1), p)


def ip_alpha_mc(p, alpha: float, samples: int = 100_000, seed: int = 0) -> tuple[float, float]:
    """Monte Carlo mean and standard error of ``(p . lambda)^alpha``."""
    p = probability_vector(p)
    lam = SimplexSampler(p.size, seed).block(0, samples)
    return _mc((lam @ p) ** alpha)


def ip_prime_at_one(p) -> float:
    """Derivative in ``alpha`` at 1 of the simplex average: ``-(H_N - 1 + Q(p)) / N``."""
    p = probability_vector(p)
    n = p.size
    return -(harmonic(n) - 1.0 + entropy.subentropy(p)) / n


def ip_prime_numeric(p, step: float = 1e-4) -> float:
    return (ip_alpha_closed(p, 1.0 + step) - ip_alpha_closed(p, 1.0 - step)) / (2.0 * step)


def power_sum_identity(p) -> float:
    """``sum_j p_j^N / prod_{i != j} (p_j - p_i)`` by the quotient formula; equals 1."""
    p = probability_vector(p)
    n = p.size
    return quotient_divided_difference(lambda x: x**n, p)


# -- random bi-stochastic matrices ------------------------------------------


def sinkhorn(a, tol: float = 1e-12, max_iter: int = 10_000) -> np.ndarray:
    """Alternate row and column normalization until both sums are within ``tol`` of 1.

    Raises NoConvergence when the budget runs out, e.g. for a zero
    pattern that admits no doubly stochastic scaling.
    """
    b = np.array(a, dtype=np.float64)
    if b.ndim != 2 or b.shape[0] != b.shape[1] or b.min() < 0:
        raise BadParameter("Sinkhorn needs a square nonnegative matrix")
    with np.errstate(divide="ignore", invalid="ignore"):
        for _ in range(max_iter):
            b /= b.sum(axis=1, keepdims=True)
            b /= b.sum(axis=0, keepdims=True)
            if not np.all(np.isfinite(b)):
                break
            if np.abs(b.sum(axis=1) - 1).max() <= tol:
                return b
    raise NoConvergence(f"Sinkhorn normalization did not reach {tol:.0e} in {max_iter} iterations")


def random_bistochastic(dim: int, seed=None, method: str = "sinkhorn") -> np.ndarray:
    """Random bi-stochastic matrix.

    ``"sinkhorn"`` normalizes an entrywise-positive exponential matrix;
    ``"permutations"`` mixes ``dim + 1`` random permutation matrices with
    simplex-uniform weights; ``"unitary"`` returns ``|U|^2`` of a Haar unitary.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    if method == "sinkhorn":
        return sinkhorn(rng.exponential(size=(dim, dim)))
    if method == "permutations":
        k = dim + 1
        w = rng.dirichlet(np.ones(k))
        b = np.zeros((dim, dim))
        for wj in w:
            b[np.arange(dim), rng.permutation(dim)] += wj
        return b
    if method == "unitary":
        return np.abs(random_unitary(dim, rng)) ** 2
    raise BadParameter(f"unknown method {method!r}")


# -- verifications -------------------------------------------------------------


def verify_lemma_integral(b, samples: int = 100_000, seed: int = 0, name: str | None = None) -> IdentityReport:
    """Simplex average of ``H(B lambda)`` against ``H_N - 1 + Q(B^T)``."""
    b = _check_bistochastic(b)
    n = b.shape[0]
    lam = SimplexSampler(n, seed).block(0, samples)
    mean, se = _mc(entropy.shannon_rows(lam @ b.T))
    rhs = harmonic(n) - 1.0 + float(np.mean([entropy.subentropy(row) for row in b]))
    return _equality(name or f"lemma_integral_N{n}", mean, rhs, MC_SIGMAS * se + MC_FLOOR,
                     "closed_form_vs_mc", samples, seed)


def verify_weighted_entropy_integral(b, samples: int = 100_000, seed: int = 0, name: str | None = None) -> IdentityReport:
    """Simplex average of ``sum_j lambda_j H(beta_j)`` against the column average ``H(B)``."""
    b = _check_bistochastic(b)
    n = b.shape[0]
    col_h = np.array([entropy.shannon(b[:, j]) for j in range(n)])
    lam = SimplexSampler(n, seed).block(0, samples)
    mean, se = _mc(lam @ col_h)
    rhs = entropy.weighted_entropy(b)
    return _equality(name or f"weighted_entropy_integral_N{n}", mean, rhs, MC_SIGMAS * se + MC_FLOOR,
                     "closed_form_vs_mc", samples, seed)


def verify_q_le_h(b, name: str | None = None) -> IdentityReport:
    """``Q(B^T) <= H(B)``."""
    b = _check_bistochastic(b)
    lhs = float(np.mean([entropy.subentropy(row) for row in b]))
    rhs = entropy.weighted_entropy(b)
    return _upper_bound(name or f"q_le_h_N{b.shape[0]}", lhs, rhs, 1e-10, "closed_form_vs_closed_form")


def verify_power_sum(p, name: str = "power_sum_identity") -> IdentityReport:
    return _equality(name, power_sum_identity(p), 1.0, 1e-9, "closed_form_vs_closed_form")


def verify_ip_alpha(p, alpha: float, samples: int = 100_000, seed: int = 0, name: str | None = None) -> IdentityReport:
    mean, se = ip_alpha_mc(p, alpha, samples, seed)
    closed = ip_alpha_closed(p, alpha)
    return _equality(name or f"ip_alpha_{alpha:g}_N{len(p)}", mean, closed,
                     MC_SIGMAS * se + MC_FLOOR, "closed_form_vs_mc", samples, seed)


def verify_ip_prime(p, name: str | None = None) -> IdentityReport:
    return _equality(name or f"ip_prime_at_one_N{len(p)}", ip_prime_numeric(p), ip_prime_at_one(p),
                     1e-6, "closed_form_vs_closed_form")


def verify_theorem(u, samples: int = 100_000, seed: int = 0, name: str | None = None) -> IdentityReport:
    """Monte Carlo CGP of ``Ad_U`` against the exact subentropy formula."""
    est = mc_cgp(u, samples, seed)
    return _equality(name or f"theorem_mc_vs_exact_N{est.dim}", est.mean, exact_cgp(u),
                     MC_SIGMAS * est.std_error + MC_FLOOR, "closed_form_vs_mc", samples, seed)


def verify_corollary(channel, samples: int = 100_000, seed: int = 0, name: str | None = None) -> IdentityReport:
    rep = check_unital_bound(channel, samples, seed)
    est = rep.estimate
    return _upper_bound(name or f"unital_bound_N{channel.dim}", est.mean, rep.bound,
                        3.0 * est.std_error + 1e-8, "closed_form_vs_mc", samples, seed)


def _draw_seed(rng) -> int:
    return int(rng.integers(0, 2**63))


def _random_distinct(rng, n: int, min_gap: float = 1e-3) -> np.ndarray:
    while True:
        p = rng.dirichlet(np.ones(n))
        if np.min(np.diff(np.sort(p))) >= min_gap:
            return p


def run_identity_battery(seed: int = 0, samples: int = 100_000) -> list[IdentityReport]:
    """Run every identity check with randomness derived from ``seed``.

    Reports come back sorted by name, so output is deterministic.
    """
    rng = np.random.default_rng(seed)
    reports: list[IdentityReport] = []

    for n in range(2, 6):
        reports.append(verify_lemma_integral(np.eye(n), samples, _draw_seed(rng), f"entropy_average_N{n}"))
    for n, method in ((3, "unitary"), (3, "permutations"), (4, "sinkhorn")):
        b = random_bistochastic(n, rng, method)
        reports.append(verify_lemma_integral(b, samples, _draw_seed(rng), f"lemma_integral_{method}_N{n}"))
        reports.append(verify_weighted_entropy_integral(b, samples, _draw_seed(rng), f"weighted_entropy_integral_{method}_N{n}"))

    worst = None
    for k in range(100):
        b = random_bistochastic(2 + k % 4, rng, ("sinkhorn", "permutations", "unitary")[k % 3])
        rep = verify_q_le_h(b, "q_le_h_sweep")
        if worst is None or rep.lhs - rep.rhs > worst.lhs - worst.rhs:
            worst = rep
    reports.append(worst)

    worst = None
    for k in range(100):
        rep = verify_power_sum(_random_distinct(rng, 2 + k % 5))
        if worst is None or rep.abs_diff > worst.abs_diff:
            worst = rep
    reports.append(worst)

    for alpha in (0.5, 1.0, 2.0, 3.0):
        p = rng.dirichlet(np.ones(3))
        reports.append(verify_ip_alpha(p, alpha, samples, _draw_seed(rng), f"ip_alpha_{alpha:g}"))
    for n in (2, 3, 4):
        reports.append(verify_ip_prime(rng.dirichlet(np.ones(n)), f"ip_prime_at_one_N{n}"))

    for n in (2, 3, 4):
        u = random_unitary(n, rng)
        reports.append(verify_theorem(u, samples, _draw_seed(rng), f"theorem_mc_vs_exact_N{n}"))
    for n, k in ((2, 2), (3, 3)):
        ch = random_unital_channel(n, k, rng)
        reports.append(verify_corollary(ch, min(samples, 20_000), _draw_seed(rng), f"unital_bound_N{n}_k{k}"))

    return sorted(reports, key=lambda r: r.name)


def reports_to_json(reports) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)


__all__ = [
    "IdentityReport",
    "gamma_ratio",
    "harmonic",
    "ip_alpha_closed",
    "ip_alpha_mc",
    "ip_prime_at_one",
    "ip_prime_numeric",
    "power_sum_identity",
    "random_bistochastic",
    "reports_to_json",
    "run_identity_battery",
    "sinkhorn",
    "verify_corollary",
    "verify_ip_alpha",
    "verify_ip_prime",
    "verify_lemma_integral",
    "verify_power_sum",
    "verify_q_le_h",
    "verify_theorem",
    "verify_weighted_entropy_integral",
]
