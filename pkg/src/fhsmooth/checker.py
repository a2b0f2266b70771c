"""Copula-axiom verification on finite grids.

Checks the defining properties directly: grounded boundary values with
uniform marginals, the 2-increasing rectangle inequality on every lattice
cell, density nonnegativity and normalization (smoothed families only;
the sharp bounds are singular and skip the density clauses), and the
ordering between the sharp bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .copulas import CopulaSpec, copula_density, copula_values

_BOUNDARY_TOL = 1e-8
_VOLUME_TOL = -1e-10
_DENSITY_TOL = -1e-10
_INTEGRAL_TOL = 1e-3
_FRECHET_SLACK = 1e-12


@dataclass(frozen=True)
class CopulaCheckReport:
    boundary_max_err: float
    min_rectangle_volume: float
    min_density: Optional[float]
    density_integral: Optional[float]
    frechet_ok: bool
    grid_n: int
    verdict: bool

    def to_json_dict(self) -> dict:
        return {
            "boundary_max_err": self.boundary_max_err,
            "min_rectangle_volume": self.min_rectangle_volume,
            "min_density": self.min_density,
            "density_integral": self.density_integral,
            "frechet_ok": self.frechet_ok,
            "grid_n": self.grid_n,
            "verdict": self.verdict,
        }


def rectangle_volume(spec: CopulaSpec, u1, u2, v1, v2) -> float:
    """C-volume of [u1,u2] x [v1,v2]; nonnegative for every copula."""
    if u1 > u2 or v1 > v2:
        raise ValueError(f"rectangle requires u1<=u2 and v1<=v2, got {(u1, u2, v1, v2)}")
    us = np.array([u2, u2, u1, u1])
    vs = np.array([v2, v1, v2, v1])
    c = copula_values(spec, us, vs)
    return float(c[0] - c[1] - c[2] + c[3])


def check_copula(spec: CopulaSpec, grid_n: int) -> CopulaCheckReport:
    """Evaluate all axioms on a grid_n x grid_n lattice spanning the closed square."""
    if grid_n < 32:
        raise ValueError(f"grid_n must be >= 32, got {grid_n!r}")
    xs = np.linspace(0.0, 1.0, grid_n)
    uu, vv = np.meshgrid(xs, xs, indexing="ij")
    c = copula_values(spec, uu, vv)

    boundary_max_err = float(
        max(
            np.max(np.abs(c[0, :])),            # C(0, v) = 0
            np.max(np.abs(c[:, 0])),            # C(u, 0) = 0
            np.max(np.abs(c[-1, :] - xs)),      # C(1, v) = v
            np.max(np.abs(c[:, -1] - xs)),      # C(u, 1) = u
        )
    )

    volumes = c[1:, 1:] - c[1:, :-1] - c[:-1, 1:] + c[:-1, :-1]
    min_volume = float(np.min(volumes))

    lower = np.maximum(uu + vv - 1.0, 0.0)
    upper = np.minimum(uu, vv)
    frechet_ok = bool(
        np.all(c >= lower - _FRECHET_SLACK) and np.all(c <= upper + _FRECHET_SLACK)
    )

    min_density = None
    density_integral = None
    if spec.smoothed:
        mids = 0.5 * (xs[:-1] + xs[1:])
        mu, mv = np.meshgrid(mids, mids, indexing="ij")
        dens = copula_density(spec, mu, mv)
        min_density = float(np.min(dens))
        cell = 1.0 / (grid_n - 1)
        density_integral = float(np.sum(dens) * cell * cell)

    verdict = (
        boundary_max_err <= _BOUNDARY_TOL
        and min_volume >= _VOLUME_TOL
        and frechet_ok
        and (
            not spec.smoothed
            or (
                min_density >= _DENSITY_TOL
                and abs(density_integral - 1.0) <= _INTEGRAL_TOL
            )
        )
    )

    return CopulaCheckReport(
        boundary_max_err=boundary_max_err,
        min_rectangle_volume=min_volume,
        min_density=min_density,
        density_integral=density_integral,
        frechet_ok=frechet_ok,
        grid_n=int(grid_n),
        verdict=bool(verdict),
    )
