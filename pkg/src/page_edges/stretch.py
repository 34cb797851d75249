"""The stretch operator and phase extraction.

Transforms are unscaled forward, ``1/(N*M)`` inverse, DC at index ``[0, 0]``.
Kernels arrive in centered layout and are moved to that layout by
:func:`center_shift` right before multiplication.
"""
from __future__ import annotations

import numpy as np

from .errors import ShapeError

__all__ = [
    "forward_transform",
    "inverse_transform",
    "center_shift",
    "smooth",
    "apply_phase_kernel",
    "apply_stretch",
    "extract_phase",
]


def forward_transform(img) -> np.ndarray:
    """2D DFT over the first two axes."""
    return np.fft.fft2(np.asarray(img), axes=(0, 1))


def inverse_transform(spectrum) -> np.ndarray:
    """Inverse of :func:`forward_transform`; carries the ``1/(N*M)`` factor."""
    return np.fft.ifft2(np.asarray(spectrum), axes=(0, 1))


def center_shift(kernel) -> np.ndarray:
    """Move a centered-layout kernel to DC-at-corner layout (first two axes).

    The centered sample ``(N//2, M//2)`` lands on ``[0, 0]``. For odd sizes
    this is ``ifftshift``, not ``fftshift``; the two only agree for even sizes.
    """
    return np.fft.ifftshift(kernel, axes=(0, 1))


def _check_same_shape(img, *kernels):
    for k in kernels:
        if k.shape[:2] != img.shape:
            raise ShapeError(f"kernel shape {k.shape[:2]} does not match image shape {img.shape}")


def smooth(img, lpf_gain, pin_dc: bool = True) -> np.ndarray:
    """Low-pass ``img`` with a centered gain map; returns the real part.

    With ``pin_dc`` the zero-frequency bin gets gain 1 (the analytic value at
    the origin). Grids with an even dimension have no sample at the origin, so
    without pinning the image mean would be scaled by an off-origin sample.
    """
    img = np.asarray(img, dtype=np.float64)
    lpf_gain = np.asarray(lpf_gain, dtype=np.float64)
    _check_same_shape(img, lpf_gain)
    gain = center_shift(lpf_gain).copy()
    if pin_dc:
        gain[0, 0] = 1.0
    return np.real(inverse_transform(forward_transform(img) * gain))


def apply_phase_kernel(smoothed, phase, pin_dc: bool = True) -> np.ndarray:
    """Multiply the spectrum of ``smoothed`` by ``exp(-j*phase)`` and invert.

    ``phase`` is centered and either ``(H, W)`` or ``(H, W, D)``; a 3D stack
    is applied channel by channel and the result keeps the trailing axis.
    With ``pin_dc`` the zero-frequency bin gets phase 0, which is the phase
    kernel's value at the origin (the log-normal profile vanishes there).
    """
    smoothed = np.asarray(smoothed, dtype=np.float64)
    phase = np.asarray(phase, dtype=np.float64)
    _check_same_shape(smoothed, phase)
    shifted = center_shift(phase).copy()
    if pin_dc:
        shifted[0, 0, ...] = 0.0
    spectrum = forward_transform(smoothed)
    if phase.ndim == 3:
        spectrum = spectrum[:, :, np.newaxis]
    return inverse_transform(spectrum * np.exp(-1j * shifted))


def apply_stretch(img, lpf_gain, phase, pin_dc: bool = True) -> np.ndarray:
    """Full stretch operator: smoothing pass, then phase-kernel pass.

    Returns the complex output field. The two passes are kept separate, with
    the real part taken in between.
    """
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2:
        raise ShapeError(f"image must be 2D, got shape {img.shape}")
    phase = np.asarray(phase)
    _check_same_shape(img, np.asarray(lpf_gain), phase)
    return apply_phase_kernel(smooth(img, lpf_gain, pin_dc), phase, pin_dc)


def extract_phase(field) -> np.ndarray:
    """Principal argument in (-pi, pi]; exact zeros map to 0."""
    field = np.asarray(field)
    phase = np.angle(field)
    phase[field == 0] = 0.0
    phase[phase == -np.pi] = np.pi
    # fold -0.0 into +0.0 so outputs are byte-stable
    return phase + 0.0
