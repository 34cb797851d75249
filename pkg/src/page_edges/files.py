"""Image decoding/encoding and the ``.tnsr`` raw feature format.

``.tnsr`` layout (all little-endian)::

    offset  size  field
    0       4     magic b"PAGE"
    4       2     format version (u16), currently 1
    6       4     height (u32)
    10      4     width (u32)
    14      4     bins (u32)
    18      1     mode (0 analog radians, 1 binary 0/1)
    19      ...   float64 values, bin-major, then row-major within a bin
"""
from __future__ import annotations

import struct
from pathlib import Path

import numpy as np
from PIL import Image

__all__ = [
    "TNSR_MAGIC",
    "TNSR_VERSION",
    "TensorFormatError",
    "read_image",
    "to_luma",
    "encode_png",
    "phase_to_gray",
    "binary_to_gray",
    "tensor_to_bytes",
    "tensor_from_bytes",
    "write_tensor",
    "read_tensor",
]

TNSR_MAGIC = b"PAGE"
TNSR_VERSION = 1
_HEADER = struct.Struct("<4sHIIIB")

LUMA_WEIGHTS = (0.299, 0.587, 0.114)


class TensorFormatError(ValueError):
    """Malformed ``.tnsr`` payload."""


def read_image(path) -> np.ndarray:
    """Decode an image file to float64 in [0, 1].

    Returns ``(H, W)`` for grayscale inputs and ``(H, W, 3)`` for color.
    Integer formats are divided by their maximum code value; alpha is dropped.
    """
    with Image.open(path) as im:
        im.load()
        mode = im.mode
        if mode in ("P", "PA", "RGBA", "CMYK", "YCbCr", "LAB", "HSV", "RGBX"):
            im = im.convert("RGB")
        elif mode in ("LA", "La"):
            im = im.convert("L")
        elif mode == "1":
            im = im.convert("L")
        arr = np.asarray(im)
        mode = im.mode
    if mode == "I":
        # 16-bit PNG/PGM decode to 32-bit "I" on some Pillow versions
        scale = 65535.0 if arr.max(initial=0) <= 65535 else float(np.iinfo(np.int32).max)
        return arr.astype(np.float64) / scale
    if np.issubdtype(arr.dtype, np.integer):
        return arr.astype(np.float64) / np.iinfo(arr.dtype).max
    if arr.dtype == bool:
        return arr.astype(np.float64)
    return arr.astype(np.float64)


def to_luma(img) -> np.ndarray:
    """Collapse an ``(H, W, 3)`` image to one channel with Rec. 601 weights."""
    img = np.asarray(img, dtype=np.float64)
    if img.ndim == 2:
        return img
    return img[:, :, :3] @ np.array(LUMA_WEIGHTS)


def encode_png(pixels) -> bytes:
    """PNG bytes for a ``uint8`` gray ``(H, W)`` or RGB ``(H, W, 3)`` array."""
    import io

    buf = io.BytesIO()
    Image.fromarray(np.asarray(pixels, dtype=np.uint8)).save(buf, format="PNG")
    return buf.getvalue()


def phase_to_gray(phase) -> np.ndarray:
    """Map [-pi, pi] linearly onto [0, 255]."""
    scaled = (np.asarray(phase, dtype=np.float64) + np.pi) / (2 * np.pi) * 255
    return np.clip(np.round(scaled), 0, 255).astype(np.uint8)


def binary_to_gray(bits) -> np.ndarray:
    return (np.asarray(bits) != 0).astype(np.uint8) * 255


def tensor_to_bytes(data, binary: bool) -> bytes:
    data = np.asarray(data, dtype=np.float64)
    if data.ndim != 3:
        raise TensorFormatError(f"tensor must be 3D (H, W, D), got shape {data.shape}")
    h, w, d = data.shape
    header = _HEADER.pack(TNSR_MAGIC, TNSR_VERSION, h, w, d, 1 if binary else 0)
    body = np.ascontiguousarray(data.transpose(2, 0, 1), dtype="<f8").tobytes()
    return header + body


def tensor_from_bytes(payload: bytes):
    """Parse ``.tnsr`` bytes; returns ``(data, binary)`` with data ``(H, W, D)``."""
    if len(payload) < _HEADER.size:
        raise TensorFormatError("truncated header")
    magic, version, h, w, d, mode = _HEADER.unpack_from(payload)
    if magic != TNSR_MAGIC:
        raise TensorFormatError(f"bad magic {magic!r}")
    if version != TNSR_VERSION:
        raise TensorFormatError(f"unsupported version {version}")
    if mode not in (0, 1):
        raise TensorFormatError(f"bad mode byte {mode}")
    expected = _HEADER.size + 8 * h * w * d
    if len(payload) != expected:
        raise TensorFormatError(f"payload is {len(payload)} bytes, expected {expected}")
    flat = np.frombuffer(payload, dtype="<f8", offset=_HEADER.size)
    data = flat.reshape(d, h, w).transpose(1, 2, 0).astype(np.float64)
    return data, bool(mode)


def write_tensor(path, data, binary: bool):
    Path(path).write_bytes(tensor_to_bytes(data, binary))


def read_tensor(path):
    return tensor_from_bytes(Path(path).read_bytes())
