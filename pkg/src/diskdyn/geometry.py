"""Geometric primitives of the unit disk and the right half-plane.

Everything here is a pure function of plain complex numbers.  Points of the
open disk are validated with :func:`ensure_disk_point`; a margin of 1e-15
keeps 1 - |z|^2 away from catastrophic cancellation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

# points this close to the unit circle are rejected as interior points
DISK_MARGIN = 1e-15

# tolerance on |w| = 1 for boundary contact points
UNIMODULAR_TOL = 1e-12


def ensure_disk_point(z: complex) -> complex:
    """Validate that z lies strictly inside the unit disk and return it."""
    z = complex(z)
    if abs(z) >= 1.0 - DISK_MARGIN:
        raise ValueError(f"point {z!r} is not strictly inside the unit disk")
    return z


def ensure_unimodular(w: complex, tol: float = UNIMODULAR_TOL) -> complex:
    """Validate that |w| = 1 within tol and return w."""
    w = complex(w)
    if abs(abs(w) - 1.0) > tol:
        raise ValueError(f"point {w!r} is not unimodular (|w| = {abs(w)!r})")
    return w


def pseudo_hyperbolic(z: complex, w: complex) -> float:
    """Pseudo-hyperbolic distance |(w - z) / (1 - conj(w) z)| in [0, 1)."""
    z = ensure_disk_point(z)
    w = ensure_disk_point(w)
    return abs((w - z) / (1.0 - w.conjugate() * z))


def hyperbolic_distance(z: complex, w: complex) -> float:
    """Hyperbolic metric log((1 + rho) / (1 - rho)); maps rho in [0,1) onto [0,inf)."""
    rho = pseudo_hyperbolic(z, w)
    return math.log((1.0 + rho) / (1.0 - rho))


def unit_direction(a: complex) -> complex:
    """a/|a| computed stably even for subnormal components."""
    m = max(abs(a.real), abs(a.imag))
    if m == 0.0:
        raise ValueError("zero has no direction")
    b = complex(a.real / m, a.imag / m)
    return b / abs(b)


def mobius_factor(a: complex, z: complex) -> complex:
    """Mobius factor vanishing at a: -(a/|a|)(z - a)/(1 - conj(a) z); identity for a = 0."""
    a = ensure_disk_point(a)
    z = complex(z)
    if a == 0:
        return z
    return -unit_direction(a) * (z - a) / (1.0 - a.conjugate() * z)


def mobius_factor_derivative(a: complex, z: complex) -> complex:
    """d/dz of mobius_factor(a, z)."""
    a = ensure_disk_point(a)
    z = complex(z)
    if a == 0:
        return 1.0 + 0.0j
    return -unit_direction(a) * (1.0 - abs(a) ** 2) / (1.0 - a.conjugate() * z) ** 2


def julia_quotient(z: complex, omega: complex) -> float:
    """Boundary quotient |z - omega|^2 / (1 - |z|^2) for a contact point omega."""
    z = ensure_disk_point(z)
    omega = ensure_unimodular(omega)
    return abs(z - omega) ** 2 / (1.0 - abs(z) ** 2)


@dataclass(frozen=True)
class Horodisk:
    """Sublevel set {z : |z - contact|^2 / (1 - |z|^2) < level}.

    Internally tangent to the unit circle at the contact point; the Euclidean
    center and radius satisfy |center| + radius = 1.
    """

    contact: complex
    level: float

    def __post_init__(self):
        ensure_unimodular(self.contact)
        if not self.level > 0:
            raise ValueError(f"horodisk level must be positive, got {self.level!r}")

    @property
    def center(self) -> complex:
        return self.contact / (self.level + 1.0)

    @property
    def radius(self) -> float:
        return self.level / (self.level + 1.0)

    def contains(self, z: complex) -> bool:
        return julia_quotient(z, self.contact) < self.level

    def quotient(self, z: complex) -> float:
        return julia_quotient(z, self.contact)


def cayley_to_rhp(z: complex) -> complex:
    """Map the disk onto the right half-plane by z -> (1 + z)/(1 - z).

    The boundary point 1 corresponds to infinity; 0 maps to 1.
    """
    z = complex(z)
    if abs(z) >= 1.0:
        raise ValueError(f"cayley_to_rhp requires |z| < 1, got {z!r}")
    return (1.0 + z) / (1.0 - z)


def cayley_from_rhp(w: complex) -> complex:
    """Inverse of cayley_to_rhp: w -> (w - 1)/(w + 1) for Re w > 0."""
    w = complex(w)
    if w.real <= 0.0:
        raise ValueError(f"cayley_from_rhp requires Re w > 0, got {w!r}")
    return (w - 1.0) / (w + 1.0)


def halfplane_pseudo_hyperbolic(z: complex, w: complex) -> float:
    """Pseudo-hyperbolic distance |(w - z)/(w + conj(z))| on the right half-plane.

    Equals the disk distance of the Cayley preimages; stable for large |w|.
    """
    z = complex(z)
    w = complex(w)
    if z.real <= 0.0 or w.real <= 0.0:
        raise ValueError("half-plane points need positive real part")
    num = w - z
    den = w + z.conjugate()
    if den == 0:
        return 1.0
    return abs(num / den)


def unit_circle_points(n: int) -> list[complex]:
    """n-th roots of unity."""
    return [cmath.exp(2j * math.pi * k / n) for k in range(n)]
