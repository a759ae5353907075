"""
Monte Carlo CGP against the exact formula
=========================================

The definition averages the relative entropy of coherence of Phi(Lambda)
over diagonal states with uniformly distributed spectra. For unitaries the
estimate should sit within a few standard errors of the exact value; for a
unital channel the subentropy of its Kraus matrix is an upper bound.
"""
import numpy as np

from cgpkit import channels as ch
from cgpkit.cgp import exact_cgp, mc_cgp, unital_bound

# A Haar random qutrit unitary
u = ch.random_unitary(3, seed=7)
est = mc_cgp(u, samples=100_000, seed=1)
print(f"exact {exact_cgp(u):.6f}   MC {est.mean:.6f} +- {est.std_error:.1e}")

# Estimates do not depend on the number of worker threads
print("workers 1 vs 4 identical:", mc_cgp(u, 50_000, seed=2, workers=1) == mc_cgp(u, 50_000, seed=2, workers=4))

# A random unital channel built from three unitaries
phi = ch.random_unital_channel(3, 3, seed=5)
est = mc_cgp(phi, samples=100_000, seed=3)
print(f"unital channel: MC {est.mean:.6f} +- {est.std_error:.1e}   bound {unital_bound(phi):.6f}")

# Mixing with the identity lowers both the CGP and its bound
mix = ch.mixture([0.5, 0.5], [np.eye(2), ch.hadamard()])
est = mc_cgp(mix, 100_000, seed=4)
print(f"(I + H)/2: MC {est.mean:.6f} +- {est.std_error:.1e}   bound {unital_bound(mix):.6f}")
