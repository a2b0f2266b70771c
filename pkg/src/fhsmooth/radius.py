"""Radius-field models r(w, z) with exact first and second partials.

Three model kinds are supported:

* ``constant`` -- r(w, z) = r0.
* ``product``  -- r(w, z) = p(w) * q(z) with polynomial factors supplied as
  low-to-high coefficient lists, so all partials are exact.  The affine-skew
  case q(z) = 1 + sqrt(2)*eps*z has a convenience constructor.
* ``gaussian_band`` -- r(w) implicitly defined so the normal-quantile
  transform of the band edges keeps a constant gap d:

      Phi^{-1}((w+r)/sqrt(2) + 1/2) - Phi^{-1}((w-r)/sqrt(2) + 1/2) = d.

  Writing x, y for the quantiles at the lower/upper band edge, implicit
  differentiation gives r' = tanh(s) with s = -d*(x+y)/4 (the difference
  form; it avoids subtracting near-equal squares) and
  r'' = -d*(1-tanh^2(s))*(x'+y')/4 with x' = (1-r')/(sqrt(2)*phi(x)),
  y' = (1+r')/(sqrt(2)*phi(y)).  Both quantile arguments must stay inside
  (0, 1), which forces r < 1/sqrt(2) - |w|; in particular |r'| < 1 and
  r'' <= 0 everywhere.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.polynomial import polynomial as npoly

from .geometry import DIAMOND_RADIUS, SQRT2, DiamondPoint, diamond_margin
from .kernel import std_normal_pdf, std_normal_quantile

_AXIS_INSET = 1e-9  # positivity is required on the open diamond only
_SWEEP_POINTS = 1001


class ModelSpecError(ValueError):
    """A radius model's parameters are malformed or violate positivity."""


class RadiusEvalError(RuntimeError):
    """Radius evaluation failed at a specific point."""


class UnboundedBandError(ValueError):
    """The skew is too large for this profile: the band upper edge diverges."""


@dataclass(frozen=True)
class RadiusJet:
    """Radius value and partials (r, r_w, r_z, r_ww, r_zz) at one point."""

    r: float
    r_w: float
    r_z: float
    r_ww: float
    r_zz: float


@dataclass(frozen=True)
class SupportBand:
    """Transverse band [lower, upper] at position w, and the skew ratio kappa."""

    w: float
    lower: float
    upper: float
    kappa: float  # upper/|lower|; +inf sentinel when lower >= 0


def _sweep_positive(coeffs, label: str):
    lim = DIAMOND_RADIUS - _AXIS_INSET
    xs = np.linspace(-lim, lim, _SWEEP_POINTS)
    vals = npoly.polyval(xs, coeffs)
    if np.min(vals) <= 0.0:
        idx = int(np.argmin(vals))
        raise ModelSpecError(
            f"{label} must be strictly positive across the diamond; "
            f"found {vals[idx]!r} at {xs[idx]!r}"
        )


@dataclass(frozen=True)
class ConstantRadius:
    """r(w, z) = r0 with vanishing partials."""

    r0: float
    kind = "constant"
    depends_on_z = False

    def __post_init__(self):
        if not (math.isfinite(self.r0) and self.r0 > 0):
            raise ModelSpecError(f"r0 must be positive, got {self.r0!r}")

    def radius(self, w, z):
        w, z = np.broadcast_arrays(np.asarray(w, float), np.asarray(z, float))
        return np.full_like(w, self.r0)

    def jet(self, w, z):
        r = self.radius(w, z)
        zero = np.zeros_like(r)
        return r, zero, zero, zero, zero


@dataclass(frozen=True)
class ProductRadius:
    """r(w, z) = p(w) * q(z) for polynomials p, q (coefficients low-to-high)."""

    p_coeffs: tuple
    q_coeffs: tuple
    epsilon: Optional[float] = None
    kind = "product"

    def __post_init__(self):
        for name in ("p_coeffs", "q_coeffs"):
            raw = getattr(self, name)
            coeffs = tuple(float(c) for c in raw)
            if not coeffs or not all(math.isfinite(c) for c in coeffs):
                raise ModelSpecError(f"{name} must be a nonempty list of finite reals")
            object.__setattr__(self, name, coeffs)
        _sweep_positive(self.p_coeffs, "p(w)")
        _sweep_positive(self.q_coeffs, "q(z)")

    @property
    def depends_on_z(self) -> bool:
        return any(c != 0.0 for c in self.q_coeffs[1:])

    def radius(self, w, z):
        w, z = np.broadcast_arrays(np.asarray(w, float), np.asarray(z, float))
        return npoly.polyval(w, self.p_coeffs) * npoly.polyval(z, self.q_coeffs)

    def jet(self, w, z):
        w, z = np.broadcast_arrays(np.asarray(w, float), np.asarray(z, float))
        p = npoly.polyval(w, self.p_coeffs)
        q = npoly.polyval(z, self.q_coeffs)
        p1 = npoly.polyval(w, npoly.polyder(self.p_coeffs))
        q1 = npoly.polyval(z, npoly.polyder(self.q_coeffs))
        p2 = npoly.polyval(w, npoly.polyder(self.p_coeffs, 2))
        q2 = npoly.polyval(z, npoly.polyder(self.q_coeffs, 2))
        return p * q, p1 * q, p * q1, p2 * q, p * q2


@dataclass(frozen=True)
class GaussianBandRadius:
    """r(w) keeping a constant normal-quantile gap d across the band."""

    d: float
    kind = "gaussian_band"
    depends_on_z = False

    def __post_init__(self):
        if not (math.isfinite(self.d) and self.d > 0):
            raise ModelSpecError(f"d must be positive, got {self.d!r}")

    def _residual_xy(self, w, r):
        x = std_normal_quantile(0.5 + (w - r) / SQRT2)
        y = std_normal_quantile(0.5 + (w + r) / SQRT2)
        return y - x - self.d, x, y

    def _solve(self, w, strict: bool):
        """Root of the gap equation per point: bisection bracket, Newton polish.

        The residual is strictly increasing in r; the bracket upper end
        1/sqrt(2) - |w| - 1e-15 is forced by the quantile domain.
        """
        w = np.asarray(w, dtype=float)
        scalar = w.ndim == 0
        w = np.atleast_1d(w)
        hi = DIAMOND_RADIUS - np.abs(w) - 1e-15
        ok = hi > 0
        if strict and not ok.all():
            bad = w[~ok][0]
            raise RadiusEvalError(
                f"gaussian_band radius undefined at w={bad!r}: no bracket "
                "(point at or outside the diamond)"
            )
        lo = np.zeros_like(w)
        hi = np.where(ok, hi, 1.0)
        ws = np.where(ok, w, 0.0)
        for _ in range(24):
            mid = 0.5 * (lo + hi)
            res, _, _ = self._residual_xy(ws, mid)
            pos = res > 0
            hi = np.where(pos, mid, hi)
            lo = np.where(pos, lo, mid)
        r = 0.5 * (lo + hi)
        for _ in range(10):
            res, x, y = self._residual_xy(ws, r)
            pos = res > 0
            hi = np.where(pos, r, hi)
            lo = np.where(pos, lo, r)
            slope = (1.0 / std_normal_pdf(x) + 1.0 / std_normal_pdf(y)) / SQRT2
            cand = r - res / slope
            # inclusive bounds: a zero residual yields cand == r == lo, which
            # must be kept, not replaced by a stale bracket midpoint
            inside = (cand >= lo) & (cand <= hi)
            r = np.where(inside, cand, 0.5 * (lo + hi))
        r = np.where(ok, r, np.nan)
        return float(r[0]) if scalar else r

    def radius(self, w, z):
        w, z = np.broadcast_arrays(np.asarray(w, float), np.asarray(z, float))
        return np.reshape(self._solve(w.ravel(), strict=False), w.shape)

    def jet(self, w, z):
        w, z = np.broadcast_arrays(np.asarray(w, float), np.asarray(z, float))
        r = np.reshape(self._solve(w.ravel(), strict=True), w.shape)
        _, x, y = self._residual_xy(w, r)
        s = -self.d * (x + y) / 4.0
        r_w = np.tanh(s)
        xp = (1.0 - r_w) / (SQRT2 * std_normal_pdf(x))
        yp = (1.0 + r_w) / (SQRT2 * std_normal_pdf(y))
        r_ww = -self.d * (1.0 - r_w * r_w) * (xp + yp) / 4.0
        zero = np.zeros_like(r)
        return r, r_w, zero, r_ww, zero


def constant_radius(r0: float) -> ConstantRadius:
    return ConstantRadius(float(r0))


def product_radius(p, epsilon: float = None, q=None) -> ProductRadius:
    """Product model from p coefficients plus either a skew eps or q coefficients."""
    if (epsilon is None) == (q is None):
        raise ModelSpecError("provide exactly one of epsilon or q")
    if epsilon is not None:
        q_coeffs = (1.0, SQRT2 * float(epsilon))
        return ProductRadius(tuple(p), q_coeffs, epsilon=float(epsilon))
    return ProductRadius(tuple(p), tuple(q), epsilon=None)


def gaussian_band_radius(d: float) -> GaussianBandRadius:
    return GaussianBandRadius(float(d))


def radius_jet(model, p: DiamondPoint) -> RadiusJet:
    """Evaluate a model's radius and partials at one strictly interior point."""
    if not diamond_margin(p.w, p.z) > 0:
        raise RadiusEvalError(
            f"radius_jet requires a strictly interior point; got (w={p.w!r}, z={p.z!r})"
        )
    r, r_w, r_z, r_ww, r_zz = model.jet(p.w, p.z)
    return RadiusJet(float(r), float(r_w), float(r_z), float(r_ww), float(r_zz))


def support_band(model, w: float) -> SupportBand:
    """Transverse support band at position w along the singular axis.

    For the affine-skew product model the fixed point of |z| = p(w)*q(z)
    is solved in closed form; constant and gaussian_band radii do not
    depend on z, so the band is simply +-r(w).
    """
    w = float(w)
    if model.kind == "constant":
        return SupportBand(w, -model.r0, model.r0, 1.0)
    if model.kind == "gaussian_band":
        r = model._solve(w, strict=True)
        return SupportBand(w, -r, r, 1.0)
    if model.kind == "product":
        if len(model.q_coeffs) > 2:
            raise ModelSpecError("support_band requires an affine q(z)")
        q0 = model.q_coeffs[0]
        q1 = model.q_coeffs[1] if len(model.q_coeffs) == 2 else 0.0
        p_val = float(npoly.polyval(w, model.p_coeffs))
        den_up = 1.0 - p_val * q1
        den_lo = 1.0 + p_val * q1
        if den_up <= 0.0 or den_lo <= 0.0:
            raise UnboundedBandError(
                f"band unbounded at w={w!r}: skew too large for this profile "
                f"(1 -+ p*q1 = {den_up!r}, {den_lo!r})"
            )
        upper = p_val * q0 / den_up
        lower = -p_val * q0 / den_lo
        kappa = upper / abs(lower) if lower < 0 else math.inf
        return SupportBand(w, lower, upper, kappa)
    raise ModelSpecError(f"unsupported model kind {model.kind!r}")


def model_from_json(source) -> object:
    """Build a radius model from a JSON object or its text form.

    Accepted shapes::

        {"kind": "constant", "r0": 0.2}
        {"kind": "product", "p": [0.25, 0, -0.2], "epsilon": 0.3}
        {"kind": "product", "p": [...], "q": [...]}
        {"kind": "gaussian_band", "d": 1.0}

    Polynomial coefficients are low-to-high degree.
    """
    if isinstance(source, (str, bytes)):
        try:
            obj = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ModelSpecError(f"invalid radius JSON: {exc}") from exc
    else:
        obj = source
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ModelSpecError("radius JSON must be an object with a 'kind' key")
    kind = obj["kind"]
    try:
        if kind == "constant":
            return constant_radius(obj["r0"])
        if kind == "product":
            if "epsilon" in obj:
                return product_radius(obj["p"], epsilon=obj["epsilon"])
            return product_radius(obj["p"], q=obj["q"])
        if kind == "gaussian_band":
            return gaussian_band_radius(obj["d"])
    except KeyError as exc:
        raise ModelSpecError(f"radius JSON missing key {exc} for kind {kind!r}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ModelSpecError):
            raise
        raise ModelSpecError(f"bad radius parameters: {exc}") from exc
    raise ModelSpecError(f"unknown radius kind {kind!r}")


def model_to_json(model) -> dict:
    """Inverse of model_from_json (dict form)."""
    if model.kind == "constant":
        return {"kind": "constant", "r0": model.r0}
    if model.kind == "gaussian_band":
        return {"kind": "gaussian_band", "d": model.d}
    if model.kind == "product":
        if model.epsilon is not None:
            return {"kind": "product", "p": list(model.p_coeffs), "epsilon": model.epsilon}
        return {"kind": "product", "p": list(model.p_coeffs), "q": list(model.q_coeffs)}
    raise ModelSpecError(f"unsupported model kind {model.kind!r}")
