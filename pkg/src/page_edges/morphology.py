"""Binary post-processing of phase features.

All maps are 2D ``uint8`` arrays holding 0 and 1. Pixels outside the image
count as background everywhere.
"""
from __future__ import annotations

import numpy as np
from scipy import ndimage

from .errors import InvalidParameterError, ShapeError

__all__ = [
    "THINNING_ELEMENTS",
    "bipolar_threshold",
    "hit_or_miss",
    "thin",
    "perimeter",
    "erode",
    "binarize_features",
]

# Golay L elements: 1 = foreground, 0 = background, 2 = don't care.
# One thinning iteration removes the matches of each element in this order.
# The order (last two swapped relative to the obvious rotation sequence)
# reproduces mahotas.thin exactly.
THINNING_ELEMENTS = np.array(
    [
        [[0, 0, 0], [2, 1, 2], [1, 1, 1]],
        [[2, 0, 0], [1, 1, 0], [1, 1, 2]],
        [[1, 2, 0], [1, 1, 0], [1, 2, 0]],
        [[1, 1, 2], [1, 1, 0], [2, 0, 0]],
        [[1, 1, 1], [2, 1, 2], [0, 0, 0]],
        [[2, 1, 1], [0, 1, 1], [0, 0, 2]],
        [[0, 0, 2], [0, 1, 1], [2, 1, 1]],
        [[0, 2, 1], [0, 1, 1], [0, 2, 1]],
    ],
    dtype=np.uint8,
)
THINNING_ELEMENTS.setflags(write=False)


def _as_bool(b) -> np.ndarray:
    b = np.asarray(b)
    if b.ndim != 2:
        raise ShapeError(f"binary map must be 2D, got shape {b.shape}")
    return b != 0


def bipolar_threshold(phase, img, thresh_min: float, thresh_max: float) -> np.ndarray:
    """Mark strong positive or negative phase, then blank out dark pixels.

    A pixel is set when ``phase > thresh_max`` or ``phase < thresh_min``, and
    cleared again wherever ``img < max(img) / 20``.
    """
    if not thresh_min < thresh_max:
        raise InvalidParameterError(
            "thresh_min", f"must be below thresh_max ({thresh_min!r} >= {thresh_max!r})"
        )
    phase = np.asarray(phase, dtype=np.float64)
    img = np.asarray(img, dtype=np.float64)
    if phase.shape != img.shape:
        raise ShapeError(f"phase shape {phase.shape} does not match image shape {img.shape}")
    bits = (phase > thresh_max) | (phase < thresh_min)
    bits[img < img.max() / 20] = False
    return bits.astype(np.uint8)


def hit_or_miss(b, element) -> np.ndarray:
    """Pixels whose 3x3 neighborhood matches ``element`` (0/1/2 coded)."""
    b = _as_bool(b)
    element = np.asarray(element)
    padded = np.pad(b, 1)
    h, w = b.shape
    out = np.ones_like(b)
    for i in range(3):
        for j in range(3):
            want = element[i, j]
            if want == 2:
                continue
            window = padded[i : i + h, j : j + w]
            out &= window if want == 1 else ~window
    return out


def thin(b, iterations: int = 1) -> np.ndarray:
    """Hit-or-miss thinning, ``iterations`` passes over the eight elements.

    Stops early once a full pass removes nothing.
    """
    if iterations < 1:
        raise InvalidParameterError("iterations", f"must be >= 1, got {iterations!r}")
    b = _as_bool(b).copy()
    for _ in range(iterations):
        before = b.copy()
        for element in THINNING_ELEMENTS:
            b &= ~hit_or_miss(b, element)
        if np.array_equal(before, b):
            break
    return b.astype(np.uint8)


def perimeter(b, connectivity: int = 4) -> np.ndarray:
    """Foreground pixels with at least one background neighbor.

    ``connectivity`` picks the 4- or 8-neighborhood.
    """
    if connectivity not in (4, 8):
        raise InvalidParameterError("connectivity", f"must be 4 or 8, got {connectivity!r}")
    b = _as_bool(b)
    padded = np.pad(b, 1)
    h, w = b.shape
    if connectivity == 4:
        offsets = [(0, 1), (1, 0), (1, 2), (2, 1)]
    else:
        offsets = [(i, j) for i in range(3) for j in range(3) if (i, j) != (1, 1)]
    interior = np.ones_like(b)
    for i, j in offsets:
        interior &= padded[i : i + h, j : j + w]
    return (b & ~interior).astype(np.uint8)


def erode(b, selem) -> np.ndarray:
    """Binary erosion by ``selem``; a 1x1 element is the identity."""
    selem = np.asarray(selem) != 0
    if selem.size == 0 or not selem.any():
        raise InvalidParameterError("selem", "structuring element must contain at least one set pixel")
    b = _as_bool(b)
    return ndimage.binary_erosion(b, structure=selem, border_value=0).astype(np.uint8)


def binarize_features(phase, img, params) -> np.ndarray:
    """Threshold, thin, take the 4-perimeter, thin again, erode by 1x1."""
    out = bipolar_threshold(phase, img, params.thresh_min, params.thresh_max)
    out = thin(out, 1)
    out = perimeter(out, 4)
    out = thin(out, 1)
    return erode(out, np.ones((1, 1)))
