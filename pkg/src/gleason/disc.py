"""Pseudo-hyperbolic geometry of the closed unit disc.

Points of the disc are plain Python ``complex`` values; :func:`disc_point`
validates them.  The sequence-level modules build certified quantities on
top of the scalar maps defined here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

#: default tolerance for scalar identities
SCALAR_TOL = 1e-12

#: moduli this close to 1 are read as exactly unimodular (rounding of cis(theta))
UNIMODULAR_TOL = 1e-14

ATTAINED = "attained"
NOT_ATTAINED = "not-attained"
UNKNOWN = "unknown"


def disc_point(value, *, name="value") -> complex:
    """Return ``value`` as a complex number of modulus at most 1."""
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"{name} must be finite, got {value!r}")
    if abs(z) > 1.0 + SCALAR_TOL:
        raise DomainError(f"{name} has modulus {abs(z)!r} > 1")
    return z


def is_unimodular(z: complex) -> bool:
    return abs(abs(z) - 1.0) <= UNIMODULAR_TOL


@dataclass(frozen=True)
class CertifiedValue:
    """A real number known to lie in ``[lo, hi]``.

    ``status`` records whether the supremum the value stands for is attained
    (at index ``attained_at``), provably not attained, or unknown.  When a
    computation ran out of budget ``examined_up_to`` holds the last index
    looked at and the enclosure may be wider than requested.
    """

    lo: float
    hi: float
    status: str = UNKNOWN
    attained_at: int | None = None
    examined_up_to: int | None = None

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def complete(self) -> bool:
        return self.examined_up_to is None

    def contains(self, x: float, slack: float = 0.0) -> bool:
        return self.lo - slack <= x <= self.hi + slack

    def map_increasing(self, fn) -> "CertifiedValue":
        """Push the enclosure through a nondecreasing function."""
        return CertifiedValue(fn(self.lo), fn(self.hi), self.status, self.attained_at, self.examined_up_to)

    def to_dict(self) -> dict:
        out = {"lo": self.lo, "hi": self.hi, "status": self.status}
        if self.attained_at is not None:
            out["attained_at"] = self.attained_at
        if self.examined_up_to is not None:
            out["examined_up_to"] = self.examined_up_to
        return out


@dataclass(frozen=True)
class ComplexEnclosure:
    """A complex number within ``radius`` of ``center``; ``terms`` factors were multiplied out."""

    center: complex
    radius: float
    terms: int = 0

    def contains(self, z: complex, slack: float = 0.0) -> bool:
        return abs(z - self.center) <= self.radius + slack

    @property
    def abs_lo(self) -> float:
        return max(0.0, abs(self.center) - self.radius)

    @property
    def abs_hi(self) -> float:
        return abs(self.center) + self.radius

    def to_dict(self) -> dict:
        return {
            "value": [self.center.real, self.center.imag],
            "tail_bound": self.radius,
            "N_truncation": self.terms,
        }


def mobius(alpha, lam) -> complex:
    """Disc automorphism ``(alpha - lam) / (1 - conj(alpha) lam)``.

    It swaps ``alpha`` and 0 and is its own inverse.
    """
    alpha = complex(alpha)
    if abs(alpha) >= 1.0:
        raise DomainError(f"mobius center must lie in the open disc, got |alpha| = {abs(alpha)!r}")
    lam = complex(lam)
    return (alpha - lam) / (1.0 - alpha.conjugate() * lam)


def rho_disc(lam, mu) -> float:
    """Pseudo-hyperbolic distance between two points of the closed disc.

    A unimodular point is at distance exactly 1 from every other point, and
    every point is at distance 0 from itself.
    """
    lam = disc_point(lam, name="lambda")
    mu = disc_point(mu, name="mu")
    if lam == mu:
        return 0.0
    if is_unimodular(lam) or is_unimodular(mu):
        return 1.0
    # ratio of moduli rather than modulus of a quotient keeps the map symmetric bit-for-bit
    num = abs(lam - mu)
    den = abs(1.0 - lam.conjugate() * mu)
    return min(1.0, num / den)


def gleason_norm_from_rho(rho: float) -> float:
    """Norm distance between two point evaluations whose pseudo-hyperbolic distance is ``rho``.

    Computed as ``2 rho / (1 + sqrt(1 - rho^2))``, which equals
    ``(2 - 2 sqrt(1 - rho^2)) / rho`` without the cancellation near 0.
    """
    rho = float(rho)
    if not 0.0 <= rho <= 1.0:
        raise DomainError(f"rho must lie in [0, 1], got {rho!r}")
    return 2.0 * rho / (1.0 + math.sqrt((1.0 - rho) * (1.0 + rho)))


def rho_from_gleason_norm(n: float) -> float:
    """Inverse of :func:`gleason_norm_from_rho`: ``4n / (4 + n^2)``."""
    n = float(n)
    if not 0.0 <= n <= 2.0:
        raise DomainError(f"norm distance must lie in [0, 2], got {n!r}")
    return 4.0 * n / (4.0 + n * n)


def mobius_bound(s: float) -> float:
    """Bound ``2s / (1 + s^2)`` on ``|mobius(alpha, lam)|`` for ``|alpha|, |lam| <= s``."""
    s = float(s)
    if not 0.0 <= s < 1.0:
        raise DomainError(f"s must lie in [0, 1), got {s!r}")
    return 2.0 * s / (1.0 + s * s)


def in_pseudo_disc(mu, center, r: float) -> bool:
    """True when ``mu`` lies in the open pseudo-hyperbolic disc of radius ``r`` about ``center``."""
    center = complex(center)
    if abs(center) >= 1.0:
        raise DomainError("center must lie in the open disc")
    if not 0.0 < r < 1.0:
        raise DomainError(f"radius must lie in (0, 1), got {r!r}")
    return rho_disc(center, mu) < r
