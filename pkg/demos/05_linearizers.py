#!/usr/bin/env python3
"""Half-plane linearizers: the normalized iterate sequences, their residuals
against h(phi(z)) = h(z) + 1, and exact exponential eigenfunctions."""

import cmath
import math

import numpy as np

from diskdyn import (
    HalfPlaneMap,
    SingularEigenfunction,
    abel_residual,
    baker_pommerenke_h,
    eigen_residual,
    extract_semiconjugacy,
    pommerenke_g,
    translation_abel_disk,
)
from diskdyn.presets import example62, translation

PROBES = [1.0 + 0.5 * cmath.exp(2j * math.pi * k / 10) for k in range(10)]

# ---------------------------------------------------------------------------
# transport to the half-plane
# ---------------------------------------------------------------------------
# non-elliptic maps are conjugated so the attracting point sits at infinity;
# the base orbit starts at w = 1.

hm = HalfPlaneMap(example62())
print("base orbit:", [f"{hm.orbit_point(n):.3f}" for n in (0, 1, 10, 100)])

# ---------------------------------------------------------------------------
# zero step: the step-normalized sequence approximates a linearizer
# ---------------------------------------------------------------------------
# h_n(z) = (phi^n(z) - z_n)/(z_{n+1} - z_n) is pinned to h_n(z_0) = 0 and
# h_n(z_1) = 1; its defect against h(phi(z)) = h(z) + 1 shrinks with n.

print("\n  n   worst |h(phi(z)) - h(z) - 1| over the probe ring")
for n in (50, 100, 200, 400):
    res = abel_residual(lambda w, n=n: baker_pommerenke_h(hm, w, n), hm, PROBES)
    print(f"{n:4d}   {res:.5f}")

print("anchors:", baker_pommerenke_h(hm, 1.0, 200),
      baker_pommerenke_h(hm, hm.orbit_point(1), 200))

# the scale-normalized sequence collapses to the constant 1 for zero step:
for n in (50, 200, 1000):
    print(f"|g_{n}(2+i) - 1| = {abs(pommerenke_g(hm, 2 + 1j, n) - 1):.4f}")

# ---------------------------------------------------------------------------
# positive step: the scale-normalized sequence stays nondegenerate
# ---------------------------------------------------------------------------
# for the vertical translation g_n is the identity, and the recovered
# conjugating map is the translation itself.

tm = HalfPlaneMap(translation())
fit = extract_semiconjugacy(tm, 6, PROBES)
print("\nsemiconjugacy fit: parabolic =", fit.parabolic,
      " psi(2+0.5i) =", f"{fit(2 + 0.5j):.6f}", " residual =", f"{fit.residual:.1e}")

# ---------------------------------------------------------------------------
# exact exponential eigenfunctions
# ---------------------------------------------------------------------------
# the translation has the exact linearizer h(z) = i (1 + z)/(1 - z) with
# image in the upper half-plane, so u_theta = exp(i theta h) is a bounded
# eigenfunction with eigenvalue exp(i theta) for every theta in [0, 2 pi].

t = translation()
for theta in (math.pi / 3, 1.0, 2 * math.pi - 0.1):
    u = SingularEigenfunction(theta, translation_abel_disk)
    res = eigen_residual(u, t, cmath.exp(1j * theta), [0.1, 0.4j, -0.3, 0.2 + 0.5j])
    print(f"theta = {theta:.4f}: |u| at 0.3 = {abs(u(0.3)):.4f}, "
          f"eigen residual = {res:.2e}")
