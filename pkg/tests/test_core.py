import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vacrad.core import (
    Direction,
    PhotonMode,
    Polarization,
    ReducedMieParams,
    SpectrumTable,
    TransitionSpec,
    direction_to_unit,
    polarization_basis,
)

thetas = st.floats(0.0, math.pi)
phis = st.floats(0.0, 2 * math.pi, exclude_max=True)


@pytest.mark.parametrize(
    "theta, phi, expected",
    [
        (0.0, 0.0, (0, 0, 1)),
        (math.pi / 2, 0.0, (1, 0, 0)),
        (math.pi / 2, math.pi / 2, (0, 1, 0)),
    ],
)
def test_direction_to_unit(theta, phi, expected):
    np.testing.assert_allclose(direction_to_unit(Direction(theta, phi)), expected, atol=1e-15)


def test_basis_on_equator_along_x():
    te, tm = polarization_basis(Direction(math.pi / 2, 0.0))
    np.testing.assert_allclose(te, [0, 1, 0], atol=1e-15)
    np.testing.assert_allclose(tm, [0, 0, 1], atol=1e-15)


def test_te_is_perpendicular_to_k_motion_plane():
    d = Direction(0.7, 1.1)
    te, _ = polarization_basis(d)
    normal = np.cross([0, 0, 1], direction_to_unit(d))
    normal /= np.linalg.norm(normal)
    assert abs(abs(te @ normal) - 1) < 1e-14


@pytest.mark.parametrize("theta", [0.0, math.pi])
def test_pole_convention(theta):
    phi = 0.4
    te, tm = polarization_basis(Direction(theta, phi))
    np.testing.assert_allclose(te, [-math.sin(phi), math.cos(phi), 0], atol=1e-15)
    np.testing.assert_allclose(tm, np.cross(direction_to_unit(Direction(theta, phi)), te), atol=1e-15)


@given(thetas, phis)
def test_basis_orthonormal_transverse_right_handed(theta, phi):
    d = Direction(theta, phi)
    k = direction_to_unit(d)
    te, tm = polarization_basis(d)
    assert abs(np.linalg.norm(k) - 1) < 1e-14
    assert abs(np.linalg.norm(te) - 1) < 1e-14
    assert abs(np.linalg.norm(tm) - 1) < 1e-14
    assert abs(te @ tm) < 1e-14
    assert abs(te @ k) < 1e-14
    assert abs(tm @ k) < 1e-14
    np.testing.assert_allclose(np.cross(te, tm), k, atol=1e-14)


@settings(max_examples=50)
@given(st.floats(1e-3, math.pi - 1e-3), phis)
def test_basis_continuous_in_theta(theta, phi):
    a = polarization_basis(Direction(theta, phi))
    b = polarization_basis(Direction(theta + 1e-6 if theta + 1e-6 <= math.pi else theta - 1e-6, phi))
    for u, v in zip(a, b):
        assert np.max(np.abs(u - v)) < 1e-5


def test_param_validation():
    with pytest.raises(ValueError):
        ReducedMieParams(rho=0.0, beta=0.1)
    with pytest.raises(ValueError):
        ReducedMieParams(rho=1.0, beta=1.0)
    with pytest.raises(ValueError):
        ReducedMieParams(rho=1.0, beta=-0.1)
    with pytest.raises(ValueError):
        Direction(-0.1)
    with pytest.raises(ValueError):
        PhotonMode(Direction(0.0), 1.5, Polarization.TE)
    with pytest.raises(ValueError):
        TransitionSpec(omega_ratio=0.0)
    with pytest.raises(ValueError):
        Polarization.parse("xx")


def test_direction_wraps_azimuth():
    assert Direction(0.3, 2 * math.pi + 0.5).phi == pytest.approx(0.5)


def test_spectrum_table_validation():
    with pytest.raises(ValueError, match="increasing"):
        SpectrumTable("x", [0, 0], {"v": [1, 2]}, "u")
    with pytest.raises(ValueError, match="grid points"):
        SpectrumTable("x", [0, 1], {"v": [1]}, "u")
    with pytest.raises(ValueError, match="negative"):
        SpectrumTable("x", [0, 1], {"v": [1, -1]}, "u")
    t = SpectrumTable("x", [], {"v": []}, "u")
    assert len(t) == 0 and t.columns == ["x", "v"]
