"""Brute-force reference implementations for validating the fast path.

Nothing here calls into :mod:`numpy.fft` or the kernel builders; transforms
are definition sums and kernels are evaluated sample by sample with
:mod:`math`. Intended for images up to 32x32.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import OracleSizeError

__all__ = ["MAX_ORACLE_SIZE", "naive_dft2", "naive_idft2", "naive_stretch"]

MAX_ORACLE_SIZE = 32


def _guard(shape):
    if len(shape) != 2:
        raise OracleSizeError(f"oracle expects a 2D array, got shape {shape}")
    if shape[0] > MAX_ORACLE_SIZE or shape[1] > MAX_ORACLE_SIZE:
        raise OracleSizeError(
            f"oracle limited to {MAX_ORACLE_SIZE}x{MAX_ORACLE_SIZE}, got {shape[0]}x{shape[1]}"
        )


def _twiddles(n, sign):
    # exponent index reduced mod n before scaling keeps arguments in [0, 2pi)
    k = np.arange(n)
    return np.exp(sign * 2j * np.pi * (np.outer(k, k) % n) / n)


def _dft2(x, sign):
    x = np.asarray(x, dtype=np.complex128)
    _guard(x.shape)
    n, m = x.shape
    # full (n, m, n, m) twiddle tensor: X[k, l] = sum_{a, b} x[a, b] w[k, a] w[l, b]
    w = _twiddles(n, sign)[:, None, :, None] * _twiddles(m, sign)[None, :, None, :]
    return np.einsum("klab,ab->kl", w, x)


def naive_dft2(img) -> np.ndarray:
    """2D DFT by direct summation, ``O(N^2 M^2)``."""
    return _dft2(img, -1)


def naive_idft2(spectrum) -> np.ndarray:
    """Inverse 2D DFT by direct summation, including the ``1/(N*M)`` factor."""
    spectrum = np.asarray(spectrum)
    _guard(spectrum.shape)
    return _dft2(spectrum, +1) / spectrum.size


def _axis(n):
    return [(2 * k - (n - 1)) / (2 * (n - 1)) for k in range(n)]


def _lognormal(v, mu, sigma):
    if v == 0:
        return 0.0
    return math.exp(-((math.log(v) - mu) ** 2) / (2 * sigma**2)) / (v * math.sqrt(2 * math.pi) * sigma)


def _gauss(u, mu, sigma):
    return math.exp(-((u - mu) ** 2) / (2 * sigma**2)) / (math.sqrt(2 * math.pi) * sigma)


def _kernels(n, m, params):
    """Per-bin spectral multipliers, indexed by DFT bin (DC at [0][0])."""
    us, vs = _axis(n), _axis(m)
    # DFT bin k reads the centered sample (k + n//2) mod n
    row_of = [(k + n // 2) % n for k in range(n)]
    col_of = [(l + m // 2) % m for l in range(m)]
    lpf_scale = math.sqrt(params.sigma_lpf**2 / math.log(2))
    lpf = [[0.0] * m for _ in range(n)]
    for k in range(n):
        for l in range(m):
            rho = math.hypot(us[row_of[k]], vs[col_of[l]])
            lpf[k][l] = math.exp(-0.5 * (rho / lpf_scale) ** 2)
    lpf[0][0] = 1.0

    d = int(params.direction_bins)
    stretch = []
    for i in range(d):
        theta = math.pi / 180 + i * math.pi / d
        c, s = math.cos(theta), math.sin(theta)
        p1 = [[0.0] * m for _ in range(n)]
        p2 = [[0.0] * m for _ in range(n)]
        for a in range(n):
            for b in range(m):
                u, v = us[a], vs[b]
                p1[a][b] = _gauss(abs(u * c + v * s), params.mu_1, params.sigma_1)
                p2[a][b] = _lognormal(abs(-u * s + v * c), params.mu_2, params.sigma_2)
        max1 = max(max(row) for row in p1)
        max2 = max(max(row) for row in p2)
        kern = [[0j] * m for _ in range(n)]
        for k in range(n):
            for l in range(m):
                a, b = row_of[k], col_of[l]
                f1 = p1[a][b] / max1 * params.s_1 if max1 > 0 else 0.0
                f2 = p2[a][b] / max2 * params.s_2 if max2 > 0 else 0.0
                kern[k][l] = cmath.exp(-1j * f1 * f2)
        kern[0][0] = 1.0 + 0j
        stretch.append(kern)
    return lpf, stretch


def _angle(z):
    if z == 0:
        return 0.0
    a = math.atan2(z.imag, z.real)
    return math.pi if a == -math.pi else a


def naive_stretch(img, params) -> np.ndarray:
    """Phase of the stretch output for every direction bin, ``(H, W, D)``.

    Recomputes the whole chain from definitions: grid, smoothing gain,
    phase profiles with per-bin normalization, DFT sums and angles.
    """
    img = np.asarray(img, dtype=np.float64)
    _guard(img.shape)
    n, m = img.shape
    lpf, stretch = _kernels(n, m, params)

    spectrum = naive_dft2(img)
    smoothed = naive_idft2(spectrum * np.array(lpf)).real
    smoothed_spectrum = naive_dft2(smoothed)

    out = np.zeros((n, m, len(stretch)))
    for i, kern in enumerate(stretch):
        field = naive_idft2(smoothed_spectrum * np.array(kern))
        for a in range(n):
            for b in range(m):
                out[a, b, i] = _angle(complex(field[a, b]))
    return out
