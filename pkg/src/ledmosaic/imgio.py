"""Raster file I/O and the packed mosaic dump format.

Ground-truth images are read from binary PPM/PGM (parsed natively, 8- or
16-bit) or from anything Pillow decodes losslessly (PNG, TIFF, BMP).  Values
are converted to float64 on ingestion with the peak representable intensity
recorded as full_scale (255 or 65535, or the PNM maxval).

Mosaics are stored either as single-plane rasters or as a packed binary
dump: magic "LEDM", u32 width, u32 height, u8 phase code, f64 full_scale,
then row-major f32 samples, all little-endian.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np
from PIL import Image

from .cfa import BayerMosaic, BayerPhase, CfaLayout, RgbImage

MOSAIC_MAGIC = b"LEDM"
_HEADER = struct.Struct("<4sIIBd")

PNM_SUFFIXES = {".ppm", ".pgm", ".pnm"}


def _read_pnm(path: Path):
    """Binary PGM (P5) / PPM (P6) reader. Returns (array, maxval)."""
    raw = path.read_bytes()
    pos = 0

    def token():
        nonlocal pos
        while pos < len(raw):
            c = raw[pos:pos + 1]
            if c == b"#":
                while pos < len(raw) and raw[pos:pos + 1] != b"\n":
                    pos += 1
            elif c.isspace():
                pos += 1
            else:
                break
        start = pos
        while pos < len(raw) and not raw[pos:pos + 1].isspace():
            pos += 1
        if start == pos:
            raise ValueError(f"truncated PNM header in {path}")
        return raw[start:pos]

    magic = token()
    if magic not in (b"P5", b"P6"):
        raise ValueError(f"unsupported PNM magic {magic!r} in {path} "
                         "(only binary P5/P6)")
    width = int(token())
    height = int(token())
    maxval = int(token())
    if not (0 < maxval < 65536):
        raise ValueError(f"invalid PNM maxval {maxval} in {path}")
    pos += 1  # single whitespace after maxval
    channels = 3 if magic == b"P6" else 1
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
    count = width * height * channels
    data = np.frombuffer(raw, dtype=dtype, count=count, offset=pos)
    if data.size != count:
        raise ValueError(f"truncated PNM pixel data in {path}")
    arr = data.astype(np.float64).reshape(
        (height, width, channels) if channels == 3 else (height, width))
    return arr, maxval


def _write_pnm(path: Path, arr: np.ndarray, maxval: int) -> None:
    channels = 3 if arr.ndim == 3 else 1
    magic = b"P6" if channels == 3 else b"P5"
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
    header = b"%s\n%d %d\n%d\n" % (magic, arr.shape[1], arr.shape[0], maxval)
    quant = np.clip(np.rint(arr), 0, maxval).astype(dtype)
    path.write_bytes(header + quant.tobytes())


def _pil_to_array(img: Image.Image):
    """(array, full_scale) from a Pillow image, float64."""
    if img.mode in ("P", "RGBA", "LA", "CMYK"):
        img = img.convert("RGB")
    if img.mode == "RGB":
        return np.asarray(img, dtype=np.float64), 255.0
    if img.mode == "L":
        return np.asarray(img, dtype=np.float64), 255.0
    if img.mode in ("I", "I;16", "I;16B", "I;16L"):
        return np.asarray(img, dtype=np.float64), 65535.0
    raise ValueError(f"unsupported image mode {img.mode!r}")


def read_raster(path):
    """Decode a raster file to (float64 array, full_scale).

    The array is 2-D for single-plane files and (H, W, 3) for color files.
    """
    path = Path(path)
    if path.suffix.lower() in PNM_SUFFIXES:
        arr, maxval = _read_pnm(path)
        return arr, float(maxval)
    with Image.open(path) as img:
        return _pil_to_array(img)


def read_rgb(path) -> RgbImage:
    """Read a ground-truth image; grayscale inputs are replicated to RGB."""
    arr, fs = read_raster(path)
    if arr.ndim == 2:
        return RgbImage(arr, arr, arr, fs)
    return RgbImage(arr[:, :, 0], arr[:, :, 1], arr[:, :, 2], fs)


def write_rgb(path, image: RgbImage) -> None:
    """Write an RGB image, quantized to the nearest representable level."""
    path = Path(path)
    fs = image.full_scale
    maxval = int(round(fs))
    stack = image.to_stack()
    if path.suffix.lower() in PNM_SUFFIXES:
        _write_pnm(path, stack, maxval)
        return
    if maxval > 255:
        raise ValueError("multi-channel rasters above 8 bits are only "
                         "supported as PPM")
    quant = np.clip(np.rint(stack), 0, 255).astype(np.uint8)
    Image.fromarray(quant, mode="RGB").save(path)


def write_mosaic(path, mosaic: BayerMosaic) -> None:
    """Write a mosaic: packed dump for .ledm, single-plane raster otherwise."""
    path = Path(path)
    if path.suffix.lower() == ".ledm":
        header = _HEADER.pack(MOSAIC_MAGIC, mosaic.width, mosaic.height,
                              int(mosaic.layout.phase), mosaic.full_scale)
        path.write_bytes(header + mosaic.data.astype("<f4").tobytes())
        return
    maxval = int(round(mosaic.full_scale))
    if path.suffix.lower() in PNM_SUFFIXES:
        _write_pnm(path, mosaic.data, maxval)
        return
    if maxval > 255:
        quant = np.clip(np.rint(mosaic.data), 0, 65535).astype(np.uint16)
        Image.fromarray(quant, mode="I;16").save(path)
    else:
        quant = np.clip(np.rint(mosaic.data), 0, 255).astype(np.uint8)
        Image.fromarray(quant, mode="L").save(path)


def read_mosaic(path, layout: CfaLayout | None = None,
                full_scale: float | None = None) -> BayerMosaic:
    """Read a mosaic file.

    Packed dumps carry their layout and full_scale; single-plane rasters
    need them supplied (layout defaults to the canonical phase, full_scale
    to the raster's bit depth).
    """
    path = Path(path)
    if path.suffix.lower() == ".ledm":
        raw = path.read_bytes()
        if len(raw) < _HEADER.size:
            raise ValueError(f"truncated mosaic dump {path}")
        magic, width, height, phase_code, fs = _HEADER.unpack_from(raw)
        if magic != MOSAIC_MAGIC:
            raise ValueError(f"{path} is not a packed mosaic dump "
                             f"(magic {magic!r})")
        try:
            phase = BayerPhase(phase_code)
        except ValueError:
            raise ValueError(f"unknown phase code {phase_code} in {path}") from None
        expected = _HEADER.size + 4 * width * height
        if len(raw) != expected:
            raise ValueError(f"mosaic dump {path} has {len(raw)} bytes, "
                             f"expected {expected}")
        data = np.frombuffer(raw, dtype="<f4", offset=_HEADER.size).astype(np.float64)
        return BayerMosaic(data.reshape(height, width), CfaLayout(phase), fs)

    arr, default_fs = read_raster(path)
    if arr.ndim != 2:
        raise ValueError(f"{path} is not a single-plane mosaic")
    return BayerMosaic(arr,
                       layout if layout is not None else CfaLayout(),
                       full_scale if full_scale is not None else default_fs)
