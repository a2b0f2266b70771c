import math

import numpy as np
import pytest

from fhsmooth.geometry import (
    DIAMOND_RADIUS,
    DiamondPoint,
    DomainError,
    SquarePoint,
    classify,
    diamond_to_square,
    square_to_diamond,
    uv_to_wz,
    wz_to_uv,
)

L = DIAMOND_RADIUS


def test_square_to_diamond_known_points():
    p = square_to_diamond(SquarePoint(0.5, 0.5))
    assert p.w == 0.0 and p.z == 0.0
    p = square_to_diamond(SquarePoint(1.0, 1.0))
    assert p.w == pytest.approx(L, abs=1e-15)
    assert p.z == 0.0
    p = square_to_diamond(SquarePoint(0.75, 0.25))
    assert p.w == pytest.approx(0.0, abs=1e-16)
    assert p.z == pytest.approx(-0.5 / math.sqrt(2), abs=1e-15)


def test_diamond_to_square_known_points():
    assert diamond_to_square(DiamondPoint(0.0, 0.0)) == SquarePoint(0.5, 0.5)
    p = diamond_to_square(DiamondPoint(L, 0.0))
    assert p.u == pytest.approx(1.0, abs=1e-15)
    assert p.v == pytest.approx(1.0, abs=1e-15)


def test_round_trip_single_point():
    q = diamond_to_square(square_to_diamond(SquarePoint(0.3, 0.9)))
    assert q.u == pytest.approx(0.3, abs=1e-15)
    assert q.v == pytest.approx(0.9, abs=1e-15)


def test_round_trip_bulk():
    rng = np.random.default_rng(0)
    u = rng.random(1_000_000)
    v = rng.random(1_000_000)
    w, z = uv_to_wz(u, v)
    u2, v2 = wz_to_uv(w, z)
    assert np.max(np.abs(u2 - u)) <= 1e-14
    assert np.max(np.abs(v2 - v)) <= 1e-14
    assert np.max(np.abs(w) + np.abs(z)) <= L + 1e-12


def test_transform_is_isometry():
    rng = np.random.default_rng(1)
    a = rng.random((10_000, 2))
    b = rng.random((10_000, 2))
    wa, za = uv_to_wz(a[:, 0], a[:, 1])
    wb, zb = uv_to_wz(b[:, 0], b[:, 1])
    d_sq = np.hypot(a[:, 0] - b[:, 0], a[:, 1] - b[:, 1])
    d_di = np.hypot(wa - wb, za - zb)
    assert np.max(np.abs(d_sq - d_di)) <= 1e-14


def test_corner_images_exact():
    corners = {
        (1.0, 1.0): (L, 0.0),
        (0.0, 0.0): (-L, 0.0),
        (0.0, 1.0): (0.0, L),
        (1.0, 0.0): (0.0, -L),
    }
    for (u, v), (w, z) in corners.items():
        p = square_to_diamond(SquarePoint(u, v))
        assert abs(p.w - w) <= 1e-15 and abs(p.z - z) <= 1e-15


def test_square_point_clamps_tiny_overshoot():
    p = SquarePoint(1.0 + 5e-13, -5e-13)
    assert p.u == 1.0 and p.v == 0.0
    with pytest.raises(DomainError):
        SquarePoint(1.0 + 1e-11, 0.5)
    with pytest.raises(DomainError):
        SquarePoint(float("nan"), 0.5)


def test_diamond_to_square_rejects_outside():
    with pytest.raises(DomainError):
        diamond_to_square(DiamondPoint(0.6, 0.6))
    # tiny overshoot is accepted and clamped through SquarePoint
    diamond_to_square(DiamondPoint(L + 5e-13, 0.0))


def test_classify_center_and_outside():
    loc = classify(DiamondPoint(0.0, 0.0), tol=1e-12)
    assert loc.tag == "interior"
    assert loc.margin == pytest.approx(L, abs=1e-16)
    loc = classify(DiamondPoint(0.6, 0.6), tol=1e-12)
    assert loc.tag == "outside"
    assert loc.margin == pytest.approx(L - 1.2, abs=1e-15)


def test_classify_near_corner():
    # 0.70710678 is the 8-digit rounding of 1/sqrt(2); its true margin is
    # 1.1865e-9, so it is interior at tol=1e-9 and boundary at a tol above
    # that margin.
    p = DiamondPoint(0.70710678, 0.0)
    margin = L - 0.70710678
    loc = classify(p, tol=1e-9)
    assert loc.margin == pytest.approx(margin, rel=1e-12)
    assert loc.tag == "interior"
    assert classify(p, tol=2e-9).tag == "boundary"
    assert classify(DiamondPoint(L, 0.0), tol=1e-12).tag == "boundary"


def test_classify_requires_positive_tol():
    with pytest.raises(ValueError):
        classify(DiamondPoint(0.0, 0.0), tol=0.0)
