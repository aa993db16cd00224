"""Synthetic two-column datasets: points on small circles around the
intersections of a rectangular grid (interval-scale example), of a radial
grid (ratio-scale example), and the z-scored rectangular data as a
mixed-sign example.

Randomness comes only from ``numpy.random.Generator(PCG64(seed))``, so a
given spec and seed reproduce the same array on every platform.

The grid geometry (spacing, origin, circle radius, radial sector) is a
reconstruction chosen to look like the classic figures; only the point
counts and the 3:1 extent ratio of the radial data are fixed targets.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .baselines import z_transform

__all__ = [
    "GridSpec",
    "RadialGridSpec",
    "rect_grid_circles",
    "radial_grid_circles",
    "mixed_sign_dataset",
]


@dataclass(frozen=True)
class GridSpec:
    """Rectangular grid of circles.

    Intersections sit at ``origin + spacing * (col, row)`` for
    ``row < grid_rows``, ``col < grid_cols``. With ``even_angles`` the
    points on each circle start at ``start_angle`` and are evenly spaced;
    otherwise angles are drawn uniformly from the seeded generator.

    With ``mirror_symmetric`` (square grids with equal origin coordinates
    only) the random angles of circle ``(c, r)`` are the reflections
    ``pi/2 - theta`` of those drawn for circle ``(r, c)``, and diagonal
    circles carry mirrored pairs, so the point cloud is exactly invariant
    under swapping x and y.
    """

    grid_rows: int = 7
    grid_cols: int = 7
    points_per_circle: int = 60
    circle_radius: float = 0.25
    spacing: float = 1.0
    origin: tuple[float, float] = (1.0, 1.0)
    even_angles: bool = False
    start_angle: float = 0.0
    mirror_symmetric: bool = True
    seed: int = 0

    def __post_init__(self):
        if min(self.grid_rows, self.grid_cols, self.points_per_circle) < 1:
            raise ValueError("grid and circle counts must be >= 1")
        if not self.circle_radius > 0:
            raise ValueError("circle_radius must be positive")

    @property
    def is_square(self) -> bool:
        return self.grid_rows == self.grid_cols and self.origin[0] == self.origin[1]

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class RadialGridSpec:
    """Polar lattice of circles, stretched along x to a fixed extent ratio.

    Intersections sit at radii ``inner_radius + k * radial_step`` for
    ``k < n_radii`` and ``n_angles`` angles evenly spanning
    ``[angle_min, angle_max]`` (radians). After the circles are placed the
    x coordinates are multiplied so that x-extent / y-extent equals
    ``extent_ratio``.
    """

    n_radii: int = 5
    n_angles: int = 7
    points_per_circle: int = 60
    circle_radius: float = 0.25
    inner_radius: float = 2.0
    radial_step: float = 1.0
    angle_min: float = np.deg2rad(15.0)
    angle_max: float = np.deg2rad(75.0)
    extent_ratio: float = 3.0
    even_angles: bool = False
    seed: int = 0

    def __post_init__(self):
        if min(self.n_radii, self.n_angles, self.points_per_circle) < 1:
            raise ValueError("grid and circle counts must be >= 1")
        if not self.circle_radius > 0:
            raise ValueError("circle_radius must be positive")
        # every circle must stay off the axes so all coordinates are positive
        if self.inner_radius * np.sin(self.angle_min) <= self.circle_radius:
            raise ValueError("innermost circles would touch the x axis")
        if self.inner_radius * np.cos(self.angle_max) <= self.circle_radius:
            raise ValueError("innermost circles would touch the y axis")

    def to_dict(self):
        return asdict(self)


def _circle_angles(rng, n_circles, per_circle, even, start):
    if even:
        base = start + 2 * np.pi * np.arange(per_circle) / per_circle
        return np.tile(base, (n_circles, 1))
    return rng.uniform(0.0, 2 * np.pi, size=(n_circles, per_circle))


def _mirrored_angles(rng, size, per_circle):
    """Uniform angles for a size x size grid, reflected across the diagonal."""
    angles = np.empty((size, size, per_circle))
    half = per_circle // 2
    for r in range(size):
        for c in range(r, size):
            if c > r:
                angles[r, c] = rng.uniform(0.0, 2 * np.pi, per_circle)
                angles[c, r] = np.pi / 2 - angles[r, c]
            else:
                drawn = rng.uniform(0.0, 2 * np.pi, half)
                extra = [np.pi / 4] if per_circle % 2 else []
                angles[r, r] = np.concatenate([drawn, np.pi / 2 - drawn, extra])
    return angles.reshape(size * size, per_circle)


def _circles(centers, radius, angles):
    cx = centers[:, 0:1] + radius * np.cos(angles)
    cy = centers[:, 1:2] + radius * np.sin(angles)
    return np.column_stack([cx.ravel(), cy.ravel()])


def rect_grid_circles(spec: GridSpec | None = None) -> np.ndarray:
    """N x 2 points, N = grid_rows * grid_cols * points_per_circle.

    Points are grouped by circle; circles are ordered row-major over the
    grid (y outer, x inner).
    """
    spec = spec or GridSpec()
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    gy, gx = np.meshgrid(np.arange(spec.grid_rows), np.arange(spec.grid_cols), indexing="ij")
    centers = np.column_stack([
        spec.origin[0] + spec.spacing * gx.ravel(),
        spec.origin[1] + spec.spacing * gy.ravel(),
    ])
    if spec.mirror_symmetric and spec.is_square and not spec.even_angles:
        angles = _mirrored_angles(rng, spec.grid_rows, spec.points_per_circle)
    else:
        angles = _circle_angles(rng, len(centers), spec.points_per_circle, spec.even_angles, spec.start_angle)
    return _circles(centers, spec.circle_radius, angles)


def radial_grid_circles(spec: RadialGridSpec | None = None) -> np.ndarray:
    """Strictly positive N x 2 points on a stretched radial grid,
    N = n_radii * n_angles * points_per_circle."""
    spec = spec or RadialGridSpec()
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    radii = spec.inner_radius + spec.radial_step * np.arange(spec.n_radii)
    thetas = np.linspace(spec.angle_min, spec.angle_max, spec.n_angles)
    rr, tt = np.meshgrid(radii, thetas, indexing="ij")
    centers = np.column_stack([(rr * np.cos(tt)).ravel(), (rr * np.sin(tt)).ravel()])
    angles = _circle_angles(rng, len(centers), spec.points_per_circle, spec.even_angles, 0.0)
    pts = _circles(centers, spec.circle_radius, angles)
    x_extent = np.ptp(pts[:, 0])
    y_extent = np.ptp(pts[:, 1])
    pts[:, 0] *= spec.extent_ratio * y_extent / x_extent
    return pts


def mixed_sign_dataset(spec: GridSpec | None = None) -> np.ndarray:
    """Column z-scores of :func:`rect_grid_circles`: mixed-sign data."""
    z, _ = z_transform(rect_grid_circles(spec))
    return z
