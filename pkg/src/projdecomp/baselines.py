"""Conventional normalizations used for comparison: column z-scores,
z-scores of logarithms, two-way z-scoring, and polar coordinates for
two-column data.

Standard deviations are population (divide by m) throughout, so a
z-scored column has unit RMS as well as unit SD.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateColumnError, DomainError, ShapeError
from .matrix import as_matrix

__all__ = ["ZParams", "z_transform", "log_z_transform", "double_z", "to_polar", "from_polar"]


@dataclass(frozen=True)
class ZParams:
    mu: np.ndarray
    sd: np.ndarray

    def to_dict(self):
        return {"mu": self.mu.tolist(), "sd": self.sd.tolist()}


def _dense(A):
    return as_matrix(A).toarray()


def _z_columns(a, axis_name="column"):
    m = a.shape[0]
    if m < 2:
        raise ShapeError(f"z-transform needs at least 2 entries per {axis_name}")
    mu = a.mean(axis=0)
    centered = a - mu
    sd = np.sqrt(np.mean(centered * centered, axis=0))
    # a column whose deviations are pure round-off counts as constant
    bad = sd <= 1e-14 * np.maximum(np.abs(mu), 1.0)
    if bad.any():
        raise DegenerateColumnError(int(np.argmax(bad)), axis_name)
    return centered / sd, ZParams(mu, sd)


def z_transform(A) -> tuple[np.ndarray, ZParams]:
    """Column z-scores ``(a_ij - mu_j) / sd_j`` with population SD."""
    return _z_columns(_dense(A))


def log_z_transform(A) -> tuple[np.ndarray, ZParams]:
    """z-scores of the natural logarithm; every entry must be strictly positive."""
    a = _dense(A)
    bad = ~(a > 0)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise DomainError(
            f"entry ({i}, {j}) = {a[i, j]!r} is not strictly positive; "
            "mixed-sign or zero data cannot be log-transformed"
        )
    return _z_columns(np.log(a))


def double_z(A, order: str = "cols_then_rows") -> np.ndarray:
    """z-score down columns and across rows, in the given order."""
    a = _dense(A)
    if order == "cols_then_rows":
        z, _ = _z_columns(a)
        z, _ = _z_columns(z.T, "row")
        return z.T
    if order == "rows_then_cols":
        z, _ = _z_columns(a.T, "row")
        z, _ = _z_columns(z.T)
        return z
    raise ValueError(f"unknown order {order!r}; expected 'cols_then_rows' or 'rows_then_cols'")


def to_polar(points) -> tuple[np.ndarray, np.ndarray]:
    """Convert an N x 2 array of points to ``(angle, RMS radius)`` columns.

    Angle is ``atan2(y, x)`` in ``(-pi, pi]``; radius is the row RMS
    ``sqrt((x^2 + y^2) / 2)``. Returns the N x 2 result and a boolean mask
    flagging ``(0, 0)`` rows, whose angle is undefined and reported as 0.
    """
    p = _dense(points)
    if p.shape[1] != 2:
        raise ShapeError(f"polar conversion needs 2 columns, got {p.shape[1]}")
    x, y = p[:, 0], p[:, 1]
    origin = (x == 0) & (y == 0)
    angle = np.arctan2(y, x)
    # atan2(-0.0, x<0) gives -pi; fold onto +pi for the half-open range
    angle = np.where(angle == -np.pi, np.pi, angle)
    angle[origin] = 0.0
    radius = np.sqrt((x * x + y * y) / 2)
    return np.column_stack([angle, radius]), origin


def from_polar(polar) -> np.ndarray:
    polar = np.asarray(polar, dtype=np.float64)
    r = polar[:, 1] * np.sqrt(2)
    return np.column_stack([r * np.cos(polar[:, 0]), r * np.sin(polar[:, 0])])
