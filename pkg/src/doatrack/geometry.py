"""Directions on the unit sphere: representation, distance, sampling.

The canonical representation everywhere in this package is the
(azimuth, elevation) pair in radians; unit 3-vectors appear only
transiently inside computations. External interfaces (CSV files, CLI
flags, JSON configs) carry angles in degrees and convert exactly at
the boundary (multiply by pi/180).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FeasibilityExhausted

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Direction:
    """A point on the unit sphere.

    azimuth is wrapped into [-pi, pi); elevation must lie in
    [-pi/2, pi/2]. The implied unit vector is
    (cos el * cos az, cos el * sin az, sin el).
    """

    azimuth: float
    elevation: float

    def __post_init__(self):
        el = float(self.elevation)
        if not -math.pi / 2 - 1e-12 <= el <= math.pi / 2 + 1e-12:
            raise ValueError(f"elevation {el!r} outside [-pi/2, pi/2]")
        az = math.remainder(float(self.azimuth), TWO_PI)
        if az >= math.pi:  # remainder() yields (-pi, pi]; the convention is [-pi, pi)
            az -= TWO_PI
        object.__setattr__(self, "azimuth", az)
        object.__setattr__(self, "elevation", min(math.pi / 2, max(-math.pi / 2, el)))

    @staticmethod
    def from_degrees(azimuth_deg: float, elevation_deg: float) -> "Direction":
        return Direction(math.radians(azimuth_deg), math.radians(elevation_deg))

    def as_degrees(self) -> tuple[float, float]:
        return math.degrees(self.azimuth), math.degrees(self.elevation)


def unit_vector(d: Direction) -> np.ndarray:
    """Unit 3-vector of a direction, shape (3,)."""
    ce = math.cos(d.elevation)
    return np.array(
        [ce * math.cos(d.azimuth), ce * math.sin(d.azimuth), math.sin(d.elevation)]
    )


def unit_vectors(directions) -> np.ndarray:
    """Stack directions into an (n, 3) array of unit vectors."""
    if not directions:
        return np.zeros((0, 3))
    return np.array([unit_vector(d) for d in directions])


def from_unit_vector(v: np.ndarray) -> Direction:
    """Direction of a (near-)unit 3-vector.

    Elevation comes from atan2 against the horizontal norm rather than
    asin(z), which is ill-conditioned near the poles.
    """
    az = math.atan2(v[1], v[0])
    el = math.atan2(float(v[2]), math.hypot(float(v[0]), float(v[1])))
    return Direction(az, el)


def angular_distance(a: Direction, b: Direction) -> float:
    """Great-circle angle between two directions, in [0, pi].

    Mathematically the arccos of the clamped dot product of the unit
    vectors; computed as atan2(|u_a x u_b|, u_a . u_b), which is exact
    for identical inputs and stable near both 0 and pi, where arccos of
    a rounded dot product loses ~1e-8 of precision.
    """
    cea, sea = math.cos(a.elevation), math.sin(a.elevation)
    ceb, seb = math.cos(b.elevation), math.sin(b.elevation)
    ax, ay, az = cea * math.cos(a.azimuth), cea * math.sin(a.azimuth), sea
    bx, by, bz = ceb * math.cos(b.azimuth), ceb * math.sin(b.azimuth), seb
    cx = ay * bz - az * by
    cy = az * bx - ax * bz
    cz = ax * by - ay * bx
    dot = ax * bx + ay * by + az * bz
    return math.atan2(math.hypot(cx, cy, cz), dot)


def pairwise_angular_distance(ua: np.ndarray, ub: np.ndarray) -> np.ndarray:
    """Angular distances between two stacks of unit vectors, shape (na, nb).

    Same stable atan2 form as angular_distance.
    """
    dots = ua @ ub.T
    cross = np.cross(ua[:, None, :], ub[None, :, :])
    return np.arctan2(np.linalg.norm(cross, axis=2), dots)


def sample_direction(rng: np.random.Generator) -> Direction:
    """Draw one direction uniformly on the sphere (area measure)."""
    az = rng.uniform(-math.pi, math.pi)
    el = math.asin(rng.uniform(-1.0, 1.0))
    return Direction(az, el)


def sample_separated_set(
    n: int,
    min_sep: float,
    rng: np.random.Generator,
    max_attempts: int = 200,
) -> list[Direction]:
    """Sample n directions with all pairwise angular distances >= min_sep.

    Whole-set rejection with per-point retry: points are placed one at
    a time, each with up to max_attempts draws; if a point cannot be
    placed the whole set is restarted, for at most max_attempts rounds.
    Geometric feasibility is the caller's responsibility.

    Raises:
        FeasibilityExhausted: all rounds failed (over-constrained request).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 < min_sep <= math.pi:
        raise ValueError("min_sep must lie in (0, pi]")
    for _ in range(max_attempts):
        chosen: list[Direction] = []
        for _ in range(n):
            for _ in range(max_attempts):
                cand = sample_direction(rng)
                if all(angular_distance(cand, d) >= min_sep for d in chosen):
                    chosen.append(cand)
                    break
            else:
                break  # point placement exhausted; restart the set
        if len(chosen) == n:
            return chosen
    raise FeasibilityExhausted(
        f"could not place {n} directions with min separation "
        f"{math.degrees(min_sep):.1f} deg in {max_attempts} rounds"
    )


def tangent_basis(d: Direction) -> tuple[np.ndarray, np.ndarray]:
    """Local east/north unit tangent vectors at a direction.

    Derived from the (azimuth, elevation) parametrization, so the frame
    is well defined everywhere, including at the poles.
    """
    sa, ca = math.sin(d.azimuth), math.cos(d.azimuth)
    se, ce = math.sin(d.elevation), math.cos(d.elevation)
    east = np.array([-sa, ca, 0.0])
    north = np.array([-se * ca, -se * sa, ce])
    return east, north


def move_along_great_circle(d: Direction, heading: float, arc: float) -> Direction:
    """Advance a direction by `arc` radians along the great circle with
    initial tangent at angle `heading` (measured from east toward north).

    Successive calls with arcs k*step for k = 0, 1, ... trace the circle
    at exactly `step` angular spacing.
    """
    u = unit_vector(d)
    east, north = tangent_basis(d)
    t = math.cos(heading) * east + math.sin(heading) * north
    v = math.cos(arc) * u + math.sin(arc) * t
    return from_unit_vector(v)


def perturb_direction(d: Direction, sigma: float, rng: np.random.Generator) -> Direction:
    """Isotropically perturb a direction.

    Rotates by a folded-normal magnitude (|N(0, sigma)|) toward a
    uniform tangent heading. The mean deflection is sigma * sqrt(2/pi).
    """
    # Both draws happen regardless of sigma so the stream position does
    # not depend on the noise setting.
    heading = rng.uniform(0.0, TWO_PI)
    arc = abs(rng.normal(0.0, sigma))
    if arc == 0.0:
        return d
    return move_along_great_circle(d, heading, arc)
