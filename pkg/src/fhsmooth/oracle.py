"""Independent ground truth: brute-force disc averages and finite differences.

Everything here deliberately avoids the closed forms used elsewhere in the
package.  ``disc_average`` integrates the raw integrand over a disc with
kink-splitting quadrature; ``fd_second_partials`` differentiates arbitrary
scalar fields numerically.  Together they verify every analytic expression
the other modules rely on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .geometry import DiamondPoint

_SQRT2 = math.sqrt(2.0)

# integrand name -> (callable on (W, Z) grids, coordinate carrying the kink)
_INTEGRANDS = {
    "abs_w": (lambda W, Z: np.abs(W), "w"),
    "abs_z": (lambda W, Z: np.abs(Z), "z"),
    "fh_lower": (lambda W, Z: (W + np.abs(W)) / _SQRT2, "w"),
    "fh_upper": (lambda W, Z: (W - np.abs(Z)) / _SQRT2 + 0.5, "z"),
}

_LEVELS = (8, 12, 16, 24, 32, 48, 64, 96, 128, 192, 256, 384, 512, 768, 1024)


class OracleError(RuntimeError):
    """Quadrature failed to converge; indicates a bug, never expected."""


@dataclass(frozen=True)
class OracleRequest:
    """A disc-average job: integrand, disc center and radius, tolerance."""

    integrand: str
    center: DiamondPoint
    radius: float
    rel_tol: float = 1e-10

    def __post_init__(self):
        if self.integrand not in _INTEGRANDS:
            raise ValueError(
                f"unknown integrand {self.integrand!r}; "
                f"expected one of {sorted(_INTEGRANDS)}"
            )
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius!r}")
        if not self.rel_tol >= 1e-12:
            raise ValueError(f"rel_tol must be >= 1e-12, got {self.rel_tol!r}")


@lru_cache(maxsize=None)
def _gauss_nodes(n: int):
    return np.polynomial.legendre.leggauss(n)


def _piece(f, kink_axis, ck, cm, radius, th0, th1, n):
    """Tensor Gauss-Legendre integral of f*cos^2(theta) over one theta piece.

    The disc is parametrized as k = ck + R*sin(theta) along the kink
    coordinate and m = cm + R*cos(theta)*zeta across it; the Jacobian
    R^2*cos^2(theta) removes the sqrt edge singularity of the chord
    length, so each kink-free piece is analytic and the tensor rule
    converges spectrally.
    """
    x, wt = _gauss_nodes(n)
    half = 0.5 * (th1 - th0)
    theta = 0.5 * (th1 + th0) + half * x
    ct = np.cos(theta)
    k_vals = ck + radius * np.sin(theta)
    m_vals = cm + radius * ct[:, None] * x[None, :]
    k_grid = np.broadcast_to(k_vals[:, None], m_vals.shape)
    if kink_axis == "w":
        vals = f(k_grid, m_vals)
    else:
        vals = f(m_vals, k_grid)
    inner = vals @ wt
    return half * float(np.sum(wt * ct * ct * inner))


def disc_average(req: OracleRequest) -> float:
    """Average the integrand over the disc of the given center and radius.

    The disc is split at the integrand's kink line (w'=0 or z'=0) and each
    smooth piece is integrated with tensorized Gauss-Legendre quadrature,
    doubling the order until two successive levels agree within rel_tol/2.
    """
    f, kink_axis = _INTEGRANDS[req.integrand]
    if kink_axis == "w":
        ck, cm = req.center.w, req.center.z
    else:
        ck, cm = req.center.z, req.center.w
    if abs(ck) < req.radius:
        th_cut = math.asin(-ck / req.radius)
        pieces = ((-0.5 * math.pi, th_cut), (th_cut, 0.5 * math.pi))
    else:
        pieces = ((-0.5 * math.pi, 0.5 * math.pi),)

    prev = None
    for n in _LEVELS:
        total = sum(
            _piece(f, kink_axis, ck, cm, req.radius, th0, th1, n)
            for th0, th1 in pieces
        )
        value = total / math.pi
        if prev is not None and abs(value - prev) <= 0.5 * req.rel_tol * max(
            abs(value), 1e-14
        ):
            return value
        prev = value
    raise OracleError(
        f"disc_average failed to converge for {req!r}; refinement cap reached"
    )


def fd_second_partials(f, p: DiamondPoint, step: float = 1e-4):
    """Central second differences of f along each axis at a diamond point.

    ``f`` must accept two floats (w, z). Returns (f_ww, f_zz).
    """
    if not 1e-7 <= step <= 1e-2:
        raise ValueError(f"step must lie in [1e-7, 1e-2], got {step!r}")
    w, z = p.w, p.z
    f0 = f(w, z)
    f_ww = (f(w + step, z) - 2.0 * f0 + f(w - step, z)) / (step * step)
    f_zz = (f(w, z + step) - 2.0 * f0 + f(w, z - step)) / (step * step)
    return f_ww, f_zz
