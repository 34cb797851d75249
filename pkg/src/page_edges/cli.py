"""Command-line front end.

Exit codes: 0 success, 1 I/O failure (unreadable input, unwritable output),
2 usage or parameter error.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

from PIL import UnidentifiedImageError

from .errors import InvalidParameterError, ShapeError
from .files import (
    binary_to_gray,
    encode_png,
    phase_to_gray,
    read_image,
    tensor_to_bytes,
    to_luma,
)
from .kernels import KernelParams
from .pipeline import FeatureTensor, binarize_tensor, page_run
from .viz import colorize_orientation, combine_tensors

log = logging.getLogger(__name__)

EMIT_CHOICES = ("analog_bins", "binary_bins", "overlay", "raw_tensor")
DEFAULT_EMIT = ("overlay", "raw_tensor")

# CLI/config key -> KernelParams field
PARAM_KEYS = {
    "mu1": "mu_1",
    "mu2": "mu_2",
    "sigma1": "sigma_1",
    "sigma2": "sigma_2",
    "s1": "s_1",
    "s2": "s_2",
    "bins": "direction_bins",
    "sigma_lpf": "sigma_lpf",
    "thresh_min": "thresh_min",
    "thresh_max": "thresh_max",
    "morph": "morph_flag",
}
FIELD_TO_KEY = {v: k for k, v in PARAM_KEYS.items()}
CONFIG_KEYS = set(PARAM_KEYS) | {"input", "output", "emit", "gray", "bands"}


@dataclass
class RunConfig:
    input_path: Path
    output_dir: Path
    bands: list[KernelParams]
    emit: frozenset[str] = field(default_factory=lambda: frozenset(DEFAULT_EMIT))
    grayscale: bool = False


class ConfigError(Exception):
    """Bad configuration value; ``key`` is the user-facing field name."""

    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key
        self.message = message


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="page",
        description="Directional phase-stretch edge extraction.",
    )
    p.add_argument("input", nargs="?", help="input image (PNG, PGM or JPEG)")
    p.add_argument("-o", "--output", help="output directory (default: page_out)")
    p.add_argument("--config", help="JSON file supplying any of these options")
    p.add_argument("--mu1", type=float, help="center of the Gaussian u' profile")
    p.add_argument("--mu2", type=float, help="log-domain center of the log-normal v' profile")
    p.add_argument("--sigma1", type=float, help="width of the Gaussian profile")
    p.add_argument("--sigma2", type=float, help="width of the log-normal profile")
    p.add_argument("--s1", type=float, help="strength of the Gaussian profile")
    p.add_argument("--s2", type=float, help="strength of the log-normal profile")
    p.add_argument("--bins", type=int, help="number of direction bins (1-179)")
    p.add_argument("--sigma-lpf", dest="sigma_lpf", type=float, help="smoothing kernel width")
    p.add_argument("--thresh-min", dest="thresh_min", type=float, help="lower bipolar threshold")
    p.add_argument("--thresh-max", dest="thresh_max", type=float, help="upper bipolar threshold")
    p.add_argument(
        "--morph",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="binary edge output (--no-morph for analog phase)",
    )
    p.add_argument(
        "--band",
        action="append",
        default=[],
        metavar="FILE",
        help="JSON file with parameters for one extra frequency band (repeatable)",
    )
    p.add_argument("--emit", help=f"comma-separated subset of {','.join(EMIT_CHOICES)}")
    p.add_argument(
        "--gray",
        action="store_true",
        default=None,
        help="collapse color input to luma before processing",
    )
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _norm_key(key):
    return str(key).replace("-", "_")


def _load_json(path, what):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(what, f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(what, f"{path} must hold a JSON object")
    return {_norm_key(k): v for k, v in data.items()}


def _param_overrides(mapping, source="config"):
    out = {}
    for key, value in mapping.items():
        if key not in PARAM_KEYS:
            raise ConfigError(key, f"unknown {source} key")
        name = PARAM_KEYS[key]
        if name == "morph_flag":
            if not isinstance(value, bool):
                raise ConfigError(key, f"must be true or false, got {value!r}")
        elif name == "direction_bins":
            if isinstance(value, bool) or not isinstance(value, (int, float)) or int(value) != value:
                raise ConfigError(key, f"must be an integer, got {value!r}")
            value = int(value)
        elif isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(key, f"must be a number, got {value!r}")
        out[name] = value
    return out


def _parse_emit(value):
    if isinstance(value, str):
        items = [s.strip() for s in value.split(",") if s.strip()]
    elif isinstance(value, (list, tuple)):
        items = [str(s) for s in value]
    else:
        raise ConfigError("emit", f"expected a list or comma-separated string, got {value!r}")
    unknown = sorted(set(items) - set(EMIT_CHOICES))
    if unknown:
        raise ConfigError("emit", f"unknown artifact(s) {unknown}; choose from {list(EMIT_CHOICES)}")
    if not items:
        raise ConfigError("emit", "at least one artifact is required")
    return frozenset(items)


def _make_params(values, emit):
    try:
        params = KernelParams(**values)
        if "binary_bins" in emit and not params.morph_flag:
            # binary bins are produced even in analog mode, so the thresholds must be usable
            params.replace(morph_flag=True)
    except InvalidParameterError as exc:
        key = FIELD_TO_KEY.get(exc.field, exc.field)
        raise ConfigError(key, exc.message) from exc
    except TypeError as exc:
        raise ConfigError("params", str(exc)) from exc
    return params


def config_from_args(args) -> RunConfig:
    """Merge defaults, config file, band files and explicit flags.

    Precedence, lowest first: built-in defaults, top-level config values,
    per-band values (``bands`` in the config and ``--band`` files), explicit
    command-line flags. Explicit flags apply to every band.
    """
    cfg = _load_json(args.config, "config") if args.config else {}
    unknown = sorted(set(cfg) - CONFIG_KEYS)
    if unknown:
        raise ConfigError(unknown[0], "unknown config key")

    base = _param_overrides({k: v for k, v in cfg.items() if k in PARAM_KEYS})
    band_dicts = []
    raw_bands = cfg.get("bands", [])
    if not isinstance(raw_bands, list):
        raise ConfigError("bands", "must be a list of objects")
    for b in raw_bands:
        if not isinstance(b, dict):
            raise ConfigError("bands", "must be a list of objects")
        band_dicts.append(_param_overrides({_norm_key(k): v for k, v in b.items()}, source="band"))
    for path in args.band:
        band_dicts.append(_param_overrides(_load_json(path, "band"), source="band"))

    explicit = {
        PARAM_KEYS[key]: getattr(args, key) for key in PARAM_KEYS if getattr(args, key) is not None
    }

    emit = _parse_emit(args.emit if args.emit is not None else cfg.get("emit", list(DEFAULT_EMIT)))
    bands = [
        _make_params({**base, **band, **explicit}, emit) for band in (band_dicts or [{}])
    ]

    input_path = args.input if args.input is not None else cfg.get("input")
    if input_path is None:
        raise ConfigError("input", "no input image given")
    output = args.output if args.output is not None else cfg.get("output", "page_out")
    gray = args.gray if args.gray is not None else cfg.get("gray", False)
    if not isinstance(gray, bool):
        raise ConfigError("gray", f"must be true or false, got {gray!r}")
    return RunConfig(Path(input_path), Path(output), bands, emit, gray)


def parse_args(argv=None) -> RunConfig:
    """Parse the command line into a :class:`RunConfig`.

    Invalid input exits with status 2 and a message naming the offending field.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return config_from_args(args)
    except ConfigError as exc:
        parser.error(f"invalid value for '{exc.key}': {exc.message}")


def bin_filename(index: int, direction: float) -> str:
    return f"bin_{index:02d}_{math.degrees(direction):.1f}.png"


def _load_planes(config: RunConfig):
    img = read_image(config.input_path)
    if img.ndim == 3 and config.grayscale:
        img = to_luma(img)
    if img.ndim == 2:
        return [img]
    return [img[:, :, c] for c in range(img.shape[2])]


def _band_artifacts(planes, params: KernelParams, emit) -> dict[str, bytes]:
    analog_params = params.replace(morph_flag=False)
    analog = [page_run(p, analog_params) for p in planes]
    need_binary = params.morph_flag or "binary_bins" in emit
    binary = None
    if need_binary:
        binary_params = params.replace(morph_flag=True)
        binary = [
            FeatureTensor(binarize_tensor(t.data, p, binary_params), t.directions, binary_params)
            for t, p in zip(analog, planes)
        ]
    analog_all = combine_tensors(analog)
    binary_all = combine_tensors(binary) if binary else None
    primary = binary_all if params.morph_flag else analog_all

    out = {}
    directions = analog_all.directions
    if "analog_bins" in emit:
        for d, theta in enumerate(directions):
            out[f"analog_bins/{bin_filename(d, theta)}"] = encode_png(
                phase_to_gray(analog_all.data[:, :, d])
            )
    if "binary_bins" in emit:
        for d, theta in enumerate(directions):
            out[f"binary_bins/{bin_filename(d, theta)}"] = encode_png(
                binary_to_gray(binary_all.data[:, :, d])
            )
    if "overlay" in emit:
        out["overlay.png"] = encode_png(colorize_orientation(primary))
    if "raw_tensor" in emit:
        out["features.tnsr"] = tensor_to_bytes(primary.data, primary.binary)
    return out


def run(config: RunConfig) -> int:
    """Execute one run; returns the process exit status."""
    try:
        planes = _load_planes(config)
    except (OSError, UnidentifiedImageError) as exc:
        print(f"page: error: cannot read input {config.input_path}: {exc}", file=sys.stderr)
        return 1

    try:
        artifacts = {}
        multi = len(config.bands) > 1
        for i, params in enumerate(config.bands):
            prefix = f"band_{i:02d}/" if multi else ""
            log.info("band %d: %s", i, params)
            for name, payload in _band_artifacts(planes, params, config.emit).items():
                artifacts[prefix + name] = payload
    except (InvalidParameterError, ShapeError) as exc:
        print(f"page: error: {exc}", file=sys.stderr)
        return 2

    try:
        for name, payload in artifacts.items():
            path = config.output_dir / name
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_bytes(payload)
    except OSError as exc:
        print(f"page: error: cannot write output: {exc}", file=sys.stderr)
        return 1
    log.info("wrote %d artifacts to %s", len(artifacts), config.output_dir)
    return 0


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    config = parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if ("-v" in argv or "--verbose" in argv) else logging.WARNING,
        format="%(levelname)s %(message)s",
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
