"""Orientation-colored rendering of feature tensors."""
from __future__ import annotations

import numpy as np
from matplotlib.colors import hsv_to_rgb

from .errors import ShapeError
from .pipeline import FeatureTensor

__all__ = ["winning_bins", "colorize_orientation", "combine_tensors", "composite_channels"]


def winning_bins(data) -> np.ndarray:
    """Index of the bin with the largest ``|response|`` per pixel (ties to the lowest)."""
    return np.argmax(np.abs(data), axis=2)


def colorize_orientation(t: FeatureTensor) -> np.ndarray:
    """Render ``t`` as an 8-bit RGB image.

    Hue follows the winning bin's direction, mapped from [0, pi) onto the
    full color wheel. Brightness is the winning magnitude normalized by its
    image maximum (analog) or the bit itself (binary). Pixels with no
    response are black.
    """
    data = np.asarray(t.data, dtype=np.float64)
    d_star = winning_bins(data)
    magnitude = np.take_along_axis(np.abs(data), d_star[:, :, None], axis=2)[:, :, 0]
    if t.binary:
        value = (magnitude != 0).astype(np.float64)
    else:
        peak = magnitude.max()
        value = magnitude / peak if peak > 0 else np.zeros_like(magnitude)
    hue = np.asarray(t.directions, dtype=np.float64)[d_star] / np.pi
    hsv = np.stack([hue % 1.0, np.ones_like(hue), value], axis=-1)
    return np.round(hsv_to_rgb(hsv) * 255).astype(np.uint8)


def combine_tensors(tensors) -> FeatureTensor:
    """Merge tensors bin by bin, keeping the value with the largest magnitude.

    Taking the magnitude (not the signed maximum) keeps negative-phase edges
    from a channel whose partners are silent.
    """
    tensors = list(tensors)
    if not tensors:
        raise ShapeError("no tensors to combine")
    shapes = {t.data.shape for t in tensors}
    if len(shapes) != 1:
        raise ShapeError(f"tensor shapes differ: {sorted(shapes)}")
    stack = np.stack([t.data for t in tensors])
    pick = np.argmax(np.abs(stack), axis=0)
    data = np.take_along_axis(stack, pick[np.newaxis], axis=0)[0]
    first = tensors[0]
    return FeatureTensor(data, first.directions, first.params)


def composite_channels(tensors) -> np.ndarray:
    """Colorize the per-bin combination of several channel tensors."""
    return colorize_orientation(combine_tensors(tensors))
