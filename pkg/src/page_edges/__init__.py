"""Directional phase-stretch edge extraction.

An image is smoothed and passed through a bank of orientation-selective
spectral phase kernels; the spatial phase of each output is one feature
channel. The result is an ``H x W x D`` tensor of directional edge maps,
analog (radians) or binarized by thresholding and thinning.
"""
from .errors import InvalidParameterError, OracleSizeError, PageError, ShapeError
from .grid import FrequencyGrid, build_frequency_grid, cart2pol
from .kernels import (
    KernelParams,
    PhaseFilterBank,
    build_filter_bank,
    build_lowpass,
    direction_bins,
    phi1,
    phi2,
    rotate_coords,
)
from .pipeline import FeatureTensor, page_run, page_run_color, page_run_multiband
from .stretch import apply_stretch, extract_phase, forward_transform, inverse_transform

__version__ = "0.1.0"

__all__ = [
    "FeatureTensor",
    "FrequencyGrid",
    "InvalidParameterError",
    "KernelParams",
    "OracleSizeError",
    "PageError",
    "PhaseFilterBank",
    "ShapeError",
    "apply_stretch",
    "build_filter_bank",
    "build_frequency_grid",
    "build_lowpass",
    "cart2pol",
    "direction_bins",
    "extract_phase",
    "forward_transform",
    "inverse_transform",
    "page_run",
    "page_run_color",
    "page_run_multiband",
    "phi1",
    "phi2",
    "rotate_coords",
]
