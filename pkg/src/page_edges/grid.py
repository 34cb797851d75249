"""Centered spatial-frequency coordinates.

Samples run from -0.5 to +0.5 cycles/sample with both endpoints included
along each axis. The first axis indexes the row frequency ``u``, the
second the column frequency ``v``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError

__all__ = ["FrequencyGrid", "cart2pol", "centered_axis", "build_frequency_grid"]


def cart2pol(x, y):
    """Convert cartesian coordinates to ``(theta, rho)``.

    Works on scalars and arrays alike. ``theta`` follows ``atan2(y, x)``
    so the origin maps to ``(0, 0)``.
    """
    theta = np.arctan2(y, x)
    rho = np.hypot(x, y)
    return theta, rho


def centered_axis(n: int) -> np.ndarray:
    """Return ``n`` evenly spaced samples on [-0.5, 0.5], endpoints included.

    Same values as ``np.linspace(-0.5, 0.5, n)`` up to one ulp, but each
    sample is a single correctly rounded quotient ``(2k - n + 1) / (2n - 2)``.
    That keeps the axis exactly antisymmetric and puts an exact zero at the
    center when ``n`` is odd; linspace guarantees neither.
    """
    if n < 2:
        raise ShapeError(f"grid dimension must be >= 2, got {n}")
    k = np.arange(n, dtype=np.float64)
    return (2.0 * k - (n - 1)) / (2.0 * (n - 1))


@dataclass(frozen=True, eq=False)
class FrequencyGrid:
    """Centered frequency grid with its polar form.

    All arrays have shape ``(height, width)``.
    """

    height: int
    width: int
    u: np.ndarray
    v: np.ndarray
    theta: np.ndarray
    rho: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return (self.height, self.width)


def build_frequency_grid(height: int, width: int) -> FrequencyGrid:
    """Build the frequency grid for an image of ``height`` x ``width`` pixels.

    Raises
    ------
    ShapeError
        If either dimension is below 2.
    """
    if height < 2 or width < 2:
        raise ShapeError(f"grid needs height, width >= 2, got {height}x{width}")
    u_axis = centered_axis(height)
    v_axis = centered_axis(width)
    u, v = np.meshgrid(u_axis, v_axis, indexing="ij")
    theta, rho = cart2pol(u, v)
    for arr in (u, v, theta, rho):
        arr.setflags(write=False)
    return FrequencyGrid(int(height), int(width), u, v, theta, rho)
