"""The disc-averaging kernel and standard-normal special functions.

``g(rho)`` is the mean of |rho + t| over the unit disc's cross sections:

    g(rho) = 2*(rho*arcsin(rho) + sqrt(1-rho^2)*(2+rho^2)/3)/pi   for |rho| < 1
    g(rho) = |rho|                                                otherwise

It is C^2 on the real line, convex, and equals |rho| outside (-1, 1); its
third derivative is unbounded at rho = +-1, which caps the smoothness of
everything built on it.  The companions are

    g'(rho)  = 2*(arcsin(rho) + rho*sqrt(1-rho^2))/pi
    g''(rho) = 4*sqrt(1-rho^2)/pi
    h(rho)   = 4*(1-rho^2)^(3/2)/(3*pi) = g - rho*g' = (1-rho^2)*g''/3

with all four identically |rho|, sign(rho), 0, 0 outside the open band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, ndtri

from .geometry import DomainError

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class KernelJet:
    """g, g', g'' and the auxiliary h evaluated at one band coordinate."""

    rho: float
    g: float
    g1: float
    g2: float
    h: float


def kernel_arrays(rho):
    """Vectorized evaluation of (g, g', g'', h).

    Parameters
    ----------
    rho : array_like
        Band coordinates; any finite values.

    Returns
    -------
    g, g1, g2, h : ndarray
        Kernel value, first and second derivative, and the auxiliary
        function, elementwise.
    """
    rho = np.asarray(rho, dtype=float)
    a = np.abs(rho)
    inside = a < 1.0
    rs = np.where(inside, rho, 0.0)
    # sqrt(1 - rho^2) evaluated as sqrt((1-rho)(1+rho)) to limit cancellation
    # near the seam; accurate to ~1e-12 at |rho| ~ 1.
    s = np.sqrt((1.0 - rs) * (1.0 + rs))
    asin = np.arcsin(rs)
    g = np.where(inside, 2.0 * (rs * asin + s * (2.0 + rs * rs) / 3.0) / np.pi, a)
    g1 = np.where(inside, 2.0 * (asin + rs * s) / np.pi, np.sign(rho))
    g2 = np.where(inside, 4.0 * s / np.pi, 0.0)
    h = np.where(inside, 4.0 * s * s * s / (3.0 * np.pi), 0.0)
    return g, g1, g2, h


def kernel_jet(rho: float) -> KernelJet:
    """Evaluate the kernel and companions at a single band coordinate."""
    g, g1, g2, h = kernel_arrays(float(rho))
    return KernelJet(float(rho), float(g), float(g1), float(g2), float(h))


def std_normal_cdf(x):
    """Standard normal CDF; scalar in, scalar out (arrays pass through)."""
    out = ndtr(np.asarray(x, dtype=float))
    return float(out) if np.ndim(x) == 0 else out


def std_normal_pdf(x):
    """Standard normal density exp(-x^2/2)/sqrt(2*pi)."""
    x = np.asarray(x, dtype=float)
    out = _INV_SQRT_2PI * np.exp(-0.5 * x * x)
    return float(out) if out.ndim == 0 else out


def std_normal_quantile(p):
    """Standard normal quantile on the open interval (0, 1).

    Raises
    ------
    DomainError
        If any input lies at or outside {0, 1}; callers must clamp.
    """
    arr = np.asarray(p, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr <= 0.0) or np.any(arr >= 1.0):
        raise DomainError("quantile requires probabilities strictly inside (0, 1)")
    out = ndtri(arr)
    return float(out) if np.ndim(p) == 0 else out
