from math import log, pi

import numpy as np
import pytest

from cgpkit import channels as ch
from cgpkit.cgp import (
    BLOCK_SIZE,
    cgp_curve_partial_swap,
    cgp_curve_rotation,
    check_unital_bound,
    coherence_samples,
    entropy_gain_slack,
    exact_cgp,
    is_max_cgp_unitary,
    max_cgp,
    mc_cgp,
    unital_bound,
)
from cgpkit.channels import KrausChannel
from cgpkit.entropy import relative_entropy_of_coherence
from cgpkit.exceptions import BadParameter, NotUnital

from conftest import random_density

LN2_HALF = log(2) - 0.5
PSWAP_HALF = (2 * log(2) - 1) / 4
Q_1_3 = 0.1503555363682672160  # Q(1/4, 3/4), 40-digit mpmath


def test_exact_examples():
    assert exact_cgp(np.eye(3)) == 0.0
    assert exact_cgp(np.eye(4)[[2, 0, 3, 1]]) == 0.0
    assert exact_cgp(ch.hadamard()) == pytest.approx(LN2_HALF, abs=1e-15)
    assert exact_cgp(ch.rotation(pi / 4)) == pytest.approx(LN2_HALF, abs=1e-15)
    assert exact_cgp(ch.partial_swap(0.5)) == pytest.approx(PSWAP_HALF, abs=1e-15)
    assert exact_cgp(ch.sqrt_swap()) == pytest.approx(PSWAP_HALF, abs=1e-15)
    assert exact_cgp(ch.fourier(4)) == pytest.approx(0.302961027786557, abs=1e-14)


def test_sqrt_swap_not_half_ln2():
    # (1/2) ln 2 would exceed the largest possible value for N = 4
    assert 0.5 * log(2) > max_cgp(4)
    assert exact_cgp(ch.sqrt_swap()) < max_cgp(4)
    np.testing.assert_allclose(np.abs(ch.sqrt_swap()) ** 2, np.abs(ch.partial_swap(0.5)) ** 2, atol=1e-15)


def test_rotation_curve():
    assert cgp_curve_rotation(0.0) == 0.0
    assert cgp_curve_rotation(pi / 4) == pytest.approx(LN2_HALF, abs=1e-15)
    assert cgp_curve_rotation(pi / 3) == pytest.approx(Q_1_3, abs=1e-14)
    for th in np.linspace(0, 2 * pi, 301):
        assert cgp_curve_rotation(th) == pytest.approx(exact_cgp(ch.rotation(th)), abs=1e-10)
    for th in pi / 4 + np.array([1e-3, 1e-5, 1e-7, -1e-4]):
        assert cgp_curve_rotation(th) == pytest.approx(exact_cgp(ch.rotation(th)), abs=1e-10)


def test_partial_swap_curve():
    assert cgp_curve_partial_swap(0.0) == 0.0
    assert cgp_curve_partial_swap(1.0) == 0.0
    assert cgp_curve_partial_swap(0.5) == pytest.approx(PSWAP_HALF, abs=1e-15)
    for t in np.linspace(0, 1, 101):
        assert cgp_curve_partial_swap(t) == pytest.approx(exact_cgp(ch.partial_swap(t)), abs=1e-10)
    with pytest.raises(BadParameter):
        cgp_curve_partial_swap(1.2)


def test_max_cgp_characterization(rng):
    for n in (2, 3, 4, 5):
        assert is_max_cgp_unitary(ch.fourier(n))
        assert exact_cgp(ch.fourier(n)) == pytest.approx(max_cgp(n), abs=1e-13)
    for _ in range(20):
        phi, theta, gamma = rng.uniform(0, 2 * pi, 3)
        u = ch.max_cgp_qubit(phi, theta, gamma)
        assert is_max_cgp_unitary(u)
        assert exact_cgp(u) == pytest.approx(max_cgp(2), abs=1e-14)
    assert not is_max_cgp_unitary(np.kron(ch.hadamard(), np.eye(2)))


def test_range_and_invariance(rng):
    for n in (2, 3, 4, 6):
        for _ in range(10):
            u = ch.random_unitary(n, rng)
            c = exact_cgp(u)
            assert 0 <= c <= max_cgp(n) + 1e-12
            p1, p2 = np.eye(n)[rng.permutation(n)], np.eye(n)[rng.permutation(n)]
            d1 = np.diag(np.exp(1j * rng.uniform(0, 2 * pi, n)))
            d2 = np.diag(np.exp(1j * rng.uniform(0, 2 * pi, n)))
            # permutations move entries without arithmetic, so equality is bitwise
            assert exact_cgp(p1 @ u @ p2) == c
            # phases perturb |u_ij|^2 by roundoff only
            assert exact_cgp(p1 @ d1 @ u @ d2 @ p2) == pytest.approx(c, abs=1e-12)


def test_mc_identity_is_exactly_zero():
    est = mc_cgp(KrausChannel((np.eye(3),)), 5000, seed=9)
    assert est.mean == 0.0 and est.std_error == 0.0


def test_mc_hadamard():
    est = mc_cgp(ch.hadamard(), 100_000, seed=42)
    assert abs(est.mean - LN2_HALF) <= 4 * est.std_error
    assert est.samples == 100_000 and est.seed == 42 and est.dim == 2


def test_mc_random_unitary_seed7():
    u = ch.random_unitary(3, 7)
    est = mc_cgp(u, 100_000, seed=3)
    assert abs(est.mean - exact_cgp(u)) <= 4 * est.std_error


def test_mc_general_path_agrees_with_unitary_path():
    # two Kraus operators proportional to the same unitary force the eigensolver path
    u = ch.random_unitary(3, 11)
    split = KrausChannel((np.sqrt(0.3) * u, np.sqrt(0.7) * u))
    assert not split.is_unitary
    fast = coherence_samples(KrausChannel.from_unitary(u), 500, seed=4)
    slow = coherence_samples(split, 500, seed=4)
    np.testing.assert_allclose(slow, fast, atol=1e-10)


def test_sample_values_match_direct_coherence():
    phi = ch.random_unital_channel(3, 3, 8)
    vals = coherence_samples(phi, 20, seed=2)
    from cgpkit.core import SimplexSampler
    lam = SimplexSampler(3, 2).block(0, 20)
    direct = [relative_entropy_of_coherence(ch.apply(phi, np.diag(x))) for x in lam]
    np.testing.assert_allclose(vals, direct, atol=1e-10)


def test_mc_worker_independence():
    phi = ch.random_unital_channel(3, 2, 1)
    n = 3 * BLOCK_SIZE + 17
    a = mc_cgp(phi, n, seed=5, workers=1)
    b = mc_cgp(phi, n, seed=5, workers=3)
    c = mc_cgp(phi, n, seed=5, workers=8)
    assert a == b == c


def test_mc_rejects_few_samples():
    with pytest.raises(BadParameter):
        mc_cgp(ch.hadamard(), 99)


def test_unital_bound():
    assert unital_bound(KrausChannel.from_unitary(ch.hadamard())) == pytest.approx(LN2_HALF, abs=1e-15)
    mix = ch.mixture([0.5, 0.5], [np.eye(2), ch.hadamard()])
    assert unital_bound(mix) == pytest.approx(Q_1_3, abs=1e-12)
    deph = ch.dephasing(3)
    rep = check_unital_bound(deph, 2000, seed=1)
    assert rep.satisfied and rep.bound >= rep.estimate.mean
    assert rep.estimate.mean == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(NotUnital):
        unital_bound(ch.amplitude_damping(0.5))


def test_unital_bound_equals_exact_for_unitaries(rng):
    for n in (2, 3, 4):
        u = ch.random_unitary(n, rng)
        assert unital_bound(KrausChannel.from_unitary(u)) == pytest.approx(exact_cgp(u), abs=1e-15)


def test_entropy_gain_inequality(rng):
    for _ in range(20):
        n = int(rng.integers(2, 4))
        phi = ch.random_unital_channel(n, int(rng.integers(2, 5)), rng)
        assert entropy_gain_slack(phi, random_density(rng, n)) >= -1e-8
