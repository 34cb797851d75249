"""End-to-end extraction: grid, kernels, stretch, phase, optional morphology."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, ShapeError
from .grid import build_frequency_grid
from .kernels import KernelParams, build_filter_bank, build_lowpass
from .morphology import binarize_features
from .stretch import apply_phase_kernel, extract_phase, smooth

__all__ = [
    "FeatureTensor",
    "as_image_plane",
    "page_run",
    "binarize_tensor",
    "page_run_multiband",
    "page_run_color",
]


@dataclass(frozen=True, eq=False)
class FeatureTensor:
    """Per-direction feature maps for one image and one parameter set.

    ``data`` is ``(height, width, D)``: radians in analog mode, 0/1 in
    binary mode (``params.morph_flag``).
    """

    data: np.ndarray
    directions: np.ndarray
    params: KernelParams

    @property
    def binary(self) -> bool:
        return bool(self.params.morph_flag)

    @property
    def shape(self):
        return self.data.shape


def as_image_plane(img) -> np.ndarray:
    """Validate a single-channel image and return it as float64."""
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2:
        raise ShapeError(f"image must be 2D, got shape {img.shape}")
    if img.shape[0] < 2 or img.shape[1] < 2:
        raise ShapeError(f"image must be at least 2x2, got {img.shape[0]}x{img.shape[1]}")
    if not np.all(np.isfinite(img)):
        raise InvalidParameterError("image", "contains NaN or Inf")
    return img


def _analog_phases(img, params):
    grid = build_frequency_grid(*img.shape)
    bank = build_filter_bank(grid, params)
    smoothed = smooth(img, build_lowpass(grid, params.sigma_lpf))
    phases = extract_phase(apply_phase_kernel(smoothed, bank.phases))
    return phases, bank.directions


def binarize_tensor(phases, img, params: KernelParams) -> np.ndarray:
    """Run the morphology chain on each channel of an analog phase stack."""
    out = np.empty(phases.shape, dtype=np.float64)
    for d in range(phases.shape[2]):
        out[:, :, d] = binarize_features(phases[:, :, d], img, params)
    return out


def page_run(img, params: KernelParams | None = None) -> FeatureTensor:
    """Extract the ``height x width x D`` feature tensor of one image.

    Examples
    --------
    >>> import numpy as np
    >>> from page_edges import KernelParams, page_run
    >>> img = np.random.default_rng(0).random((32, 48))
    >>> page_run(img, KernelParams(direction_bins=6, morph_flag=False)).shape
    (32, 48, 6)
    """
    params = params or KernelParams()
    params.validate()
    img = as_image_plane(img)
    phases, directions = _analog_phases(img, params)
    data = binarize_tensor(phases, img, params) if params.morph_flag else phases
    return FeatureTensor(data, directions, params)


def page_run_multiband(img, bands) -> list[FeatureTensor]:
    """One :func:`page_run` per parameter set, in the given order."""
    bands = list(bands)
    if not bands:
        raise InvalidParameterError("bands", "at least one band is required")
    return [page_run(img, params) for params in bands]


def page_run_color(channels, params: KernelParams | None = None) -> list[FeatureTensor]:
    """Process each color channel independently.

    ``channels`` is a sequence of 2D planes or an ``(H, W, C)`` array with
    1 to 4 channels. Use :func:`page_edges.viz.composite_channels` for the
    combined view.
    """
    if isinstance(channels, np.ndarray) and channels.ndim == 3:
        channels = [channels[:, :, c] for c in range(channels.shape[2])]
    channels = [as_image_plane(c) for c in channels]
    if not 1 <= len(channels) <= 4:
        raise ShapeError(f"expected 1 to 4 channels, got {len(channels)}")
    shapes = {c.shape for c in channels}
    if len(shapes) != 1:
        raise ShapeError(f"channel dimensions differ: {sorted(shapes)}")
    return [page_run(c, params) for c in channels]
