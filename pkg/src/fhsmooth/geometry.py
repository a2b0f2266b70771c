"""Coordinate changes between the unit square and the rotated diamond domain.

The unit square [0,1]^2 maps onto the diamond |w| + |z| <= 1/sqrt(2) via
w = (v + u - 1)/sqrt(2), z = (v - u)/sqrt(2).  The transform is an isometry
(rotation by 45 degrees plus a shift), so Euclidean distances are preserved
and the mixed derivative becomes (d^2/dw^2 - d^2/dz^2)/2 in the new frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SQRT2 = math.sqrt(2.0)

#: l1-radius of the diamond: max of |w| + |z| over the square's image.
DIAMOND_RADIUS = math.sqrt(0.5)

#: Slack accepted on unit-interval coordinates before rejecting them.
COORD_SLACK = 1e-12


class DomainError(ValueError):
    """A point lies outside the domain required by the operation."""


@dataclass(frozen=True)
class SquarePoint:
    """A point (u, v) in the closed unit square.

    Values within 1e-12 outside [0, 1] are clamped (upstream samplers
    legitimately produce 1 + eps); anything further out is rejected.
    """

    u: float
    v: float

    def __post_init__(self):
        for name in ("u", "v"):
            val = float(getattr(self, name))
            if not math.isfinite(val) or val < -COORD_SLACK or val > 1.0 + COORD_SLACK:
                raise DomainError(f"{name}={val!r} outside [0,1] beyond {COORD_SLACK}")
            object.__setattr__(self, name, min(max(val, 0.0), 1.0))


@dataclass(frozen=True)
class DiamondPoint:
    """A point in rotated (w, z) coordinates.

    Not validated at construction: oracle integration centers may lie
    anywhere in the plane.  Points produced by ``square_to_diamond``
    satisfy |w| + |z| <= 1/sqrt(2) up to roundoff.
    """

    w: float
    z: float


@dataclass(frozen=True)
class DomainLocation:
    """Classification of a diamond point: tag plus signed boundary distance."""

    tag: str  # 'interior' | 'boundary' | 'outside'
    margin: float  # 1/sqrt(2) - |w| - |z|


def uv_to_wz(u, v):
    """Array-friendly square -> diamond transform."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return (v + u - 1.0) / SQRT2, (v - u) / SQRT2


def wz_to_uv(w, z):
    """Array-friendly diamond -> square transform (inverse of uv_to_wz)."""
    w = np.asarray(w, dtype=float)
    z = np.asarray(z, dtype=float)
    return (w - z) / SQRT2 + 0.5, (w + z) / SQRT2 + 0.5


def diamond_margin(w, z):
    """Signed distance 1/sqrt(2) - |w| - |z| (positive strictly inside)."""
    return DIAMOND_RADIUS - np.abs(w) - np.abs(z)


def square_to_diamond(p: SquarePoint) -> DiamondPoint:
    w, z = uv_to_wz(p.u, p.v)
    return DiamondPoint(float(w), float(z))


def diamond_to_square(p: DiamondPoint) -> SquarePoint:
    """Inverse transform; rejects points outside the diamond beyond 1e-12."""
    if abs(p.w) + abs(p.z) > DIAMOND_RADIUS + COORD_SLACK:
        raise DomainError(
            f"point (w={p.w!r}, z={p.z!r}) outside |w|+|z| <= 1/sqrt(2)"
        )
    u, v = wz_to_uv(p.w, p.z)
    return SquarePoint(float(u), float(v))


def classify(p: DiamondPoint, tol: float = 1e-12) -> DomainLocation:
    """Locate a diamond point relative to the boundary at tolerance ``tol``."""
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    margin = float(diamond_margin(p.w, p.z))
    if margin > tol:
        tag = "interior"
    elif margin < -tol:
        tag = "outside"
    else:
        tag = "boundary"
    return DomainLocation(tag, margin)
