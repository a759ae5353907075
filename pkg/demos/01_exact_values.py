"""
Exact coherence generating power of small gates
===============================================

For a unitary the CGP is the row-averaged subentropy of the matrix of
squared moduli, so it can be computed exactly.
"""
from math import log

import numpy as np

from cgpkit import channels as ch
from cgpkit.cgp import exact_cgp, is_max_cgp_unitary, max_cgp
from cgpkit.entropy import subentropy

# Subentropy of a two-point distribution, and of a tied distribution with zeros
print("Q(1/2, 1/2)       =", subentropy([0.5, 0.5]), " ln2 - 1/2 =", log(2) - 0.5)
print("Q(1/2, 1/2, 0, 0) =", subentropy([0.5, 0.5, 0.0, 0.0]))

# Hadamard and the pi/4 rotation produce the same squared-modulus matrix
for name in ("hadamard", "rotation:0.7853981633974483", "sqrt-swap", "partial-swap:0.5"):
    print(f"{name:32s} CGP = {exact_cgp(ch.make_gate(name)):.15f}")

# The sqrt-swap gate and the t = 1/2 partial swap share |u_ij|^2, so their
# CGP agrees. Half of ln 2 would exceed the largest value possible for N = 4.
print("0.5 ln 2 =", 0.5 * log(2), " max CGP for N=4 =", max_cgp(4))

# Fourier matrices have |u_ij|^2 = 1/N and reach the maximum ln N - H_N + 1
for n in (2, 3, 4, 8):
    f = ch.fourier(n)
    print(f"N={n}: CGP(F) = {exact_cgp(f):.15f}  max = {max_cgp(n):.15f}  is_max = {is_max_cgp_unitary(f)}")

# Permutations and diagonal phases create no coherence
print("CGP(swap)           =", exact_cgp(ch.swap(2)))
print("CGP(diag phases)    =", exact_cgp(np.diag(np.exp(1j * np.array([0.1, 2.0, -1.3])))))
