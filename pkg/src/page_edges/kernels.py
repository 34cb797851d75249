"""Spectral kernels: Gaussian low-pass gain and the directional phase bank.

Every kernel here is sampled on the centered grid from :mod:`page_edges.grid`.
Moving a kernel into DC-at-corner layout happens at multiplication time in
:mod:`page_edges.stretch`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

import numpy as np

from .errors import InvalidParameterError
from .grid import FrequencyGrid

__all__ = [
    "KernelParams",
    "PhaseFilterBank",
    "MAX_DIRECTION_BINS",
    "lowpass_gain",
    "build_lowpass",
    "direction_bins",
    "rotate_coords",
    "phi1",
    "phi2",
    "build_filter_bank",
]

# Bins start at 1 degree with a step of pi/d; past 179 the sequence below pi
# holds fewer than d angles.
MAX_DIRECTION_BINS = 179
MIN_DIRECTION = math.pi / 180


@dataclass(frozen=True)
class KernelParams:
    """Full parameter set for one frequency band.

    The defaults give visible edges on natural 8-bit images normalized to
    [0, 1]. They are engineering choices, not published values. With the
    default kernel the output phase rarely exceeds about 0.01 rad, which is
    why the thresholds sit in the milliradian range.

    Attributes
    ----------
    mu_1, sigma_1, s_1 : float
        Center, width and strength of the Gaussian profile along the
        rotated ``u'`` axis (selects edge scale).
    mu_2, sigma_2, s_2 : float
        Log-domain center, width and strength of the log-normal profile
        along the rotated ``v'`` axis (the edge detector proper).
    direction_bins : int
        Number of orientation channels.
    sigma_lpf : float
        Width of the Gaussian smoothing kernel, in cycles/sample.
    thresh_min, thresh_max : float
        Bipolar thresholds (radians) for binary output.
    morph_flag : bool
        ``False`` for analog phase output, ``True`` for binary edges.
    """

    mu_1: float = 0.0
    mu_2: float = 0.3
    sigma_1: float = 0.08
    sigma_2: float = 0.7
    s_1: float = 0.6
    s_2: float = 0.8
    direction_bins: int = 10
    sigma_lpf: float = 0.1
    thresh_min: float = -0.003
    thresh_max: float = 0.0015
    morph_flag: bool = True

    def __post_init__(self):
        self.validate()

    def validate(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == "morph_flag":
                if not isinstance(value, (bool, np.bool_)):
                    raise InvalidParameterError(f.name, f"must be a boolean, got {value!r}")
                continue
            if isinstance(value, bool) or not isinstance(value, (int, float, np.integer, np.floating)):
                raise InvalidParameterError(f.name, f"must be a number, got {value!r}")
            if not math.isfinite(value):
                raise InvalidParameterError(f.name, f"must be finite, got {value!r}")
        for name in ("sigma_1", "sigma_2", "sigma_lpf", "s_1", "s_2"):
            if getattr(self, name) <= 0:
                raise InvalidParameterError(name, f"must be > 0, got {getattr(self, name)!r}")
        d = self.direction_bins
        if int(d) != d or not 1 <= d <= MAX_DIRECTION_BINS:
            raise InvalidParameterError(
                "direction_bins", f"must be an integer in [1, {MAX_DIRECTION_BINS}], got {d!r}"
            )
        if self.morph_flag and not self.thresh_min < self.thresh_max:
            raise InvalidParameterError(
                "thresh_min",
                f"must be below thresh_max ({self.thresh_min!r} >= {self.thresh_max!r})",
            )

    def replace(self, **changes) -> "KernelParams":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True, eq=False)
class PhaseFilterBank:
    """Per-direction phase surfaces on the centered grid.

    ``phases`` has shape ``(height, width, D)``; channel ``d`` belongs to
    ``directions[d]``.
    """

    phases: np.ndarray
    directions: np.ndarray

    def __len__(self):
        return len(self.directions)


def lowpass_gain(rho, sigma_lpf: float):
    """Gaussian smoothing gain at radial frequency ``rho``.

    ``sigma_lpf`` is the half-power radius: the gain there is exactly
    ``2 ** -0.5``.
    """
    if not sigma_lpf > 0:
        raise InvalidParameterError("sigma_lpf", f"must be > 0, got {sigma_lpf!r}")
    scale = np.sqrt(sigma_lpf**2 / np.log(2))
    return np.exp(-0.5 * np.power(np.divide(rho, scale), 2))


def build_lowpass(grid: FrequencyGrid, sigma_lpf: float) -> np.ndarray:
    """Smoothing gain over ``grid`` (centered layout), values in (0, 1]."""
    return lowpass_gain(grid.rho, sigma_lpf)


def direction_bins(d: int) -> np.ndarray:
    """Orientation of each filter channel, in radians.

    ``pi/180 + k*pi/d`` for ``k = 0 .. d-1``; every angle lies below pi.
    """
    if int(d) != d or not 1 <= d <= MAX_DIRECTION_BINS:
        raise InvalidParameterError(
            "direction_bins", f"must be an integer in [1, {MAX_DIRECTION_BINS}], got {d!r}"
        )
    d = int(d)
    return MIN_DIRECTION + np.arange(d) * (np.pi / d)


def rotate_coords(grid: FrequencyGrid, theta: float):
    """Rotate the grid coordinates by ``theta``; returns ``(u', v')``."""
    c, s = np.cos(theta), np.sin(theta)
    u_prime = grid.u * c + grid.v * s
    v_prime = -grid.u * s + grid.v * c
    return u_prime, v_prime


def _normalize(raw, strength):
    peak = raw.max()
    if peak <= 0:
        # passband underflows on every sample: contributes no phase
        return np.zeros_like(raw)
    return raw / peak * strength


def phi1(u_prime, mu_1: float, sigma_1: float, s_1: float) -> np.ndarray:
    """Gaussian profile in ``|u'|`` scaled so its grid maximum equals ``s_1``."""
    if not sigma_1 > 0:
        raise InvalidParameterError("sigma_1", f"must be > 0, got {sigma_1!r}")
    u_prime = np.asarray(u_prime, dtype=np.float64)
    raw = np.exp(-0.5 * ((np.abs(u_prime) - mu_1) / sigma_1) ** 2) / (
        np.sqrt(2 * np.pi) * sigma_1
    )
    return _normalize(raw, s_1)


def phi2(v_prime, mu_2: float, sigma_2: float, s_2: float) -> np.ndarray:
    """Log-normal profile in ``|v'|`` scaled so its grid maximum equals ``s_2``.

    The density's limit at ``v' = 0`` is 0, and that is the value used there.
    """
    if not sigma_2 > 0:
        raise InvalidParameterError("sigma_2", f"must be > 0, got {sigma_2!r}")
    mag = np.abs(np.asarray(v_prime, dtype=np.float64))
    nonzero = mag > 0
    raw = np.zeros_like(mag)
    m = mag[nonzero]
    raw[nonzero] = np.exp(-0.5 * ((np.log(m) - mu_2) / sigma_2) ** 2) / (
        m * np.sqrt(2 * np.pi) * sigma_2
    )
    return _normalize(raw, s_2)


def build_filter_bank(grid: FrequencyGrid, params: KernelParams) -> PhaseFilterBank:
    """Build the ``phi1(u') * phi2(v')`` phase surface for every direction bin."""
    params.validate()
    directions = direction_bins(params.direction_bins)
    phases = np.empty(grid.shape + (len(directions),))
    for i, theta in enumerate(directions):
        u_prime, v_prime = rotate_coords(grid, theta)
        phases[:, :, i] = phi1(u_prime, params.mu_1, params.sigma_1, params.s_1) * phi2(
            v_prime, params.mu_2, params.sigma_2, params.s_2
        )
    phases.setflags(write=False)
    directions.setflags(write=False)
    return PhaseFilterBank(phases, directions)
