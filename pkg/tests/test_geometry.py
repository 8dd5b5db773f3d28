import math

import numpy as np
import pytest
from hypothesis import given
import hypothesis.strategies as st

from conftest import directions
from doatrack.errors import FeasibilityExhausted
from doatrack.geometry import (
    Direction,
    angular_distance,
    from_unit_vector,
    move_along_great_circle,
    perturb_direction,
    sample_direction,
    sample_separated_set,
    unit_vector,
)


@given(directions())
def test_identical_directions_have_zero_distance(d):
    assert angular_distance(d, d) == 0.0


def test_antipodal_directions_are_pi_apart():
    a = Direction(0.0, 0.0)
    b = Direction(math.pi, 0.0)
    assert angular_distance(a, b) == pytest.approx(math.pi, abs=1e-12)


def test_orthogonal_directions_are_half_pi_apart():
    a = Direction(0.0, 0.0)
    b = Direction(math.pi / 2, 0.0)
    assert angular_distance(a, b) == pytest.approx(math.pi / 2, abs=1e-12)


@given(directions())
def test_unit_vector_round_trip(d):
    v = unit_vector(d)
    assert abs(np.linalg.norm(v) - 1.0) < 1e-12
    back = from_unit_vector(v)
    # chord length bounds the angular deviation for small separations
    assert np.linalg.norm(unit_vector(back) - v) < 1e-12


def test_azimuth_wraps_into_range():
    d = Direction(3 * math.pi / 2, 0.1)
    assert -math.pi <= d.azimuth < math.pi
    assert angular_distance(d, Direction(-math.pi / 2, 0.1)) < 1e-12


def test_elevation_out_of_range_rejected():
    with pytest.raises(ValueError):
        Direction(0.0, 2.0)


@given(directions(), directions())
def test_distance_symmetric(a, b):
    assert angular_distance(a, b) == pytest.approx(angular_distance(b, a), abs=1e-15)
    assert 0.0 <= angular_distance(a, b) <= math.pi


@given(directions(), directions(), directions())
def test_triangle_inequality(a, b, c):
    assert angular_distance(a, c) <= (
        angular_distance(a, b) + angular_distance(b, c) + 1e-9
    )


def _rotation_matrix(axis, angle):
    axis = axis / np.linalg.norm(axis)
    k = np.array(
        [[0, -axis[2], axis[1]], [axis[2], 0, -axis[0]], [-axis[1], axis[0], 0]]
    )
    return np.eye(3) + math.sin(angle) * k + (1 - math.cos(angle)) * (k @ k)


@given(
    directions(),
    directions(),
    st.floats(-1, 1),
    st.floats(-1, 1),
    st.floats(0.1, 1),
    st.floats(0, 2 * math.pi),
)
def test_distance_invariant_under_common_rotation(a, b, ax, ay, az, angle):
    rot = _rotation_matrix(np.array([ax, ay, az + 1.5]), angle)
    ra = from_unit_vector(rot @ unit_vector(a))
    rb = from_unit_vector(rot @ unit_vector(b))
    assert angular_distance(ra, rb) == pytest.approx(angular_distance(a, b), abs=1e-9)


def test_sample_direction_deterministic_per_seed():
    a = sample_direction(np.random.default_rng(42))
    b = sample_direction(np.random.default_rng(42))
    assert a == b


def test_sample_direction_uniform_statistics():
    rng = np.random.default_rng(123)
    n = 100_000
    az = rng.uniform(-math.pi, math.pi, n)
    el = np.arcsin(rng.uniform(-1.0, 1.0, n))
    # vectorized mirror of sample_direction's construction
    vecs = np.stack(
        [np.cos(el) * np.cos(az), np.cos(el) * np.sin(az), np.sin(el)], axis=1
    )
    assert np.linalg.norm(vecs.mean(axis=0)) < 0.02
    assert abs(np.mean(el > 0) - 0.5) < 0.01


def test_separated_set_singleton():
    out = sample_separated_set(1, math.radians(170), np.random.default_rng(0))
    assert len(out) == 1


def test_separated_set_six_at_sixty_degrees():
    rng = np.random.default_rng(7)
    out = sample_separated_set(6, math.radians(60.0), rng)
    assert len(out) == 6
    pairs = [(i, j) for i in range(6) for j in range(i + 1, 6)]
    assert len(pairs) == 15
    for i, j in pairs:
        assert angular_distance(out[i], out[j]) >= math.radians(60.0)


def test_separated_set_infeasible_raises():
    with pytest.raises(FeasibilityExhausted):
        sample_separated_set(
            3, math.radians(179.9), np.random.default_rng(1), max_attempts=50
        )


def test_separated_set_deterministic_per_seed():
    a = sample_separated_set(4, math.radians(40), np.random.default_rng(9))
    b = sample_separated_set(4, math.radians(40), np.random.default_rng(9))
    assert a == b


def test_great_circle_constant_step():
    start = Direction(0.4, -0.3)
    heading = 1.1
    step = math.radians(2.0)
    points = [move_along_great_circle(start, heading, k * step) for k in range(50)]
    for a, b in zip(points, points[1:]):
        assert angular_distance(a, b) == pytest.approx(step, abs=1e-9)


def test_perturb_magnitude_matches_folded_normal_mean():
    rng = np.random.default_rng(11)
    sigma = math.radians(5.0)
    base = Direction(0.2, 0.5)
    devs = [angular_distance(base, perturb_direction(base, sigma, rng)) for _ in range(10_000)]
    expected = sigma * math.sqrt(2 / math.pi)
    assert abs(np.mean(devs) - expected) / expected < 0.15


def test_perturb_zero_sigma_is_identity():
    rng = np.random.default_rng(3)
    d = Direction(1.0, 0.2)
    assert perturb_direction(d, 0.0, rng) == d
