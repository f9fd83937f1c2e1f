"""Binary PPM (P6, maxval 255) reading and writing."""

from __future__ import annotations

import os

import numpy as np


class PPMError(ValueError):
    pass


def _tokens(buf: bytes, count: int) -> tuple[list[int], int]:
    """Read ``count`` whitespace-separated header integers, skipping ``#`` comments."""
    out, pos = [], 0
    while len(out) < count:
        while pos < len(buf) and buf[pos:pos + 1].isspace():
            pos += 1
        if pos >= len(buf):
            raise PPMError("truncated PPM header")
        if buf[pos:pos + 1] == b"#":
            while pos < len(buf) and buf[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(buf) and not buf[pos:pos + 1].isspace() and buf[pos:pos + 1] != b"#":
            pos += 1
        try:
            out.append(int(buf[start:pos]))
        except ValueError:
            raise PPMError(f"bad header token {buf[start:pos]!r}") from None
    return out, pos


def read_ppm(path: str | os.PathLike) -> np.ndarray:
    """Pixels as a ``(height, width, 3)`` ``uint8`` array."""
    with open(path, "rb") as fh:
        buf = fh.read()
    if buf[:2] != b"P6":
        raise PPMError(f"{path}: not a binary PPM (magic {buf[:2]!r})")
    (width, height, maxval), pos = _tokens(buf[2:], 3)
    pos += 2 + 1  # single whitespace byte after maxval
    if maxval != 255:
        raise PPMError(f"{path}: only maxval 255 is supported, got {maxval}")
    need = width * height * 3
    raster = buf[pos:pos + need]
    if len(raster) != need:
        raise PPMError(f"{path}: expected {need} raster bytes, found {len(raster)}")
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width, 3).copy()


def write_ppm(path: str | os.PathLike, pixels: np.ndarray) -> None:
    px = np.asarray(pixels)
    if px.ndim != 3 or px.shape[2] != 3 or px.dtype != np.uint8:
        raise PPMError("pixels must be a (height, width, 3) uint8 array")
    with open(path, "wb") as fh:
        fh.write(b"P6\n%d %d\n255\n" % (px.shape[1], px.shape[0]))
        fh.write(np.ascontiguousarray(px).tobytes())
