"""
Checking the integral identities numerically
============================================

Each report compares a closed form with a Monte Carlo average or with an
independent closed form. The same battery backs ``cgpkit verify``.
"""
import numpy as np

from cgpkit import oracle
from cgpkit.entropy import harmonic, subentropy

# Average Shannon entropy of a uniform point of the simplex is H_N - 1
rep = oracle.verify_lemma_integral(np.eye(4), samples=100_000, seed=0)
print(f"mean H(lambda), N=4: {rep.lhs:.5f} vs H_4 - 1 = {harmonic(4) - 1:.5f}")

# A random doubly stochastic matrix adds the row subentropy
b = oracle.random_bistochastic(3, seed=1, method="sinkhorn")
rep = oracle.verify_lemma_integral(b, samples=100_000, seed=1)
print(f"mean H(B lambda): {rep.lhs:.5f} vs {rep.rhs:.5f}  passed={rep.passed}")

# Derivative of the simplex power integral at alpha = 1
p = [0.5, 0.3, 0.2]
print("I'_p(1) closed:", oracle.ip_prime_at_one(p), " numeric:", oracle.ip_prime_numeric(p))
print("Q(p) =", subentropy(p))

# The full battery
reports = oracle.run_identity_battery(seed=0)
for r in reports:
    print(f"{'ok  ' if r.passed else 'FAIL'} {r.name:40s} |diff| {r.abs_diff:.2e} <= {r.tolerance:.2e}")
print(sum(r.passed for r in reports), "of", len(reports), "passed")
