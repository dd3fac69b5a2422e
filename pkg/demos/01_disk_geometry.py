#!/usr/bin/env python3
"""Tour of the disk geometry toolkit: distances, zero factors, horodisks,
and the change of variables to the right half-plane."""

import numpy as np

from diskdyn import (
    Horodisk,
    cayley_from_rhp,
    cayley_to_rhp,
    halfplane_pseudo_hyperbolic,
    hyperbolic_distance,
    julia_quotient,
    mobius_factor,
    pseudo_hyperbolic,
)

# ---------------------------------------------------------------------------
# pseudo-hyperbolic and hyperbolic distances
# ---------------------------------------------------------------------------
# rho(z, w) = |(w - z)/(1 - conj(w) z)| is the conformally natural way to
# measure separation in the unit disk: it is invariant under disk
# automorphisms and saturates at 1 near the boundary.

print("rho(0, 0.5)      =", pseudo_hyperbolic(0, 0.5))       # plain modulus
print("rho(0.9, 0.95)   =", pseudo_hyperbolic(0.9, 0.95))    # boundary squeeze
print("d_h(0, 0.5)      =", hyperbolic_distance(0, 0.5))     # log scale
print("d_h(0, 0.99)     =", hyperbolic_distance(0, 0.99))

# the two metrics are monotone functions of each other:
# d_h = log((1 + rho)/(1 - rho))

# ---------------------------------------------------------------------------
# zero factors
# ---------------------------------------------------------------------------
# m_a vanishes at a, is unimodular on the circle, and m_0 is the identity.

a = 0.4 + 0.3j
print("\nm_a(a)           =", mobius_factor(a, a))
print("|m_a on circle|  =", abs(mobius_factor(a, np.exp(0.7j))))

# automorphism invariance: distances survive post-composition with m_a
z, w = 0.2 - 0.1j, -0.5 + 0.4j
print("rho before       =", pseudo_hyperbolic(z, w))
print("rho after m_a    =", pseudo_hyperbolic(mobius_factor(a, z), mobius_factor(a, w)))

# ---------------------------------------------------------------------------
# horodisks
# ---------------------------------------------------------------------------
# H(omega, M) = {z : |z - omega|^2/(1 - |z|^2) < M} is a disk internally
# tangent to the unit circle at omega; smaller M hugs the boundary tighter.

for M in (0.25, 1.0, 4.0):
    h = Horodisk(1.0, M)
    print(f"H(1, {M:>4}): center {h.center:.4f}, radius {h.radius:.4f}")

print("julia_quotient(0, 1)    =", julia_quotient(0, 1), " (0 sits on the boundary of H(1,1))")
print("julia_quotient(-0.8, 1) =", julia_quotient(-0.8, 1))

# ---------------------------------------------------------------------------
# half-plane transport
# ---------------------------------------------------------------------------
# (1 + z)/(1 - z) maps the disk onto Re w > 0 with 1 going to infinity.
# Distances transport exactly, which is what makes boundary-hugging orbit
# computations stable: near the attracting point the half-plane formula
# |(w2 - w1)/(w2 + conj(w1))| has no cancellation.

z1, z2 = 0.95, 0.96
w1, w2 = cayley_to_rhp(z1), cayley_to_rhp(z2)
print("\ndisk rho          =", pseudo_hyperbolic(z1, z2))
print("half-plane rho    =", halfplane_pseudo_hyperbolic(w1, w2))
print("round trip        =", cayley_from_rhp(cayley_to_rhp(0.3 + 0.2j)))
