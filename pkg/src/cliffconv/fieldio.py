"""CLFF: a small binary container for multivector fields.

Layout (little endian)::

    4s   magic "CLFF"
    u32  version (1)
    u32  m
    u32  mode (0 periodic, 1 calibrated)
    u64  N_k             for k = 1..m
    f64  spacing_k       for k = 1..m
    f64  planes          2**m blades, each a real plane then an imaginary plane,
                         row-major over the grid

The coefficients are complex, so every blade contributes two float64 planes.
"""

from __future__ import annotations

import os
import struct

import numpy as np

from .gft import CALIBRATED, PERIODIC, GridSpec, MultivectorField

MAGIC = b"CLFF"
VERSION = 1
_HEAD = struct.Struct("<4sIII")
_MODES = {PERIODIC: 0, CALIBRATED: 1}


class FieldFormatError(ValueError):
    pass


def dumps(field: MultivectorField) -> bytes:
    grid = field.grid
    head = _HEAD.pack(MAGIC, VERSION, grid.m, _MODES[grid.mode])
    sizes = struct.pack(f"<{grid.m}Q", *grid.sizes)
    spacing = struct.pack(f"<{grid.m}d", *grid.spacing)
    planes = np.stack([field.data.real, field.data.imag], axis=1).astype("<f8")
    return head + sizes + spacing + planes.tobytes()


def loads(buf: bytes) -> MultivectorField:
    if len(buf) < _HEAD.size:
        raise FieldFormatError("file too short for a CLFF header")
    magic, version, m, mode = _HEAD.unpack_from(buf)
    if magic != MAGIC:
        raise FieldFormatError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise FieldFormatError(f"unsupported CLFF version {version}")
    if not 1 <= m <= 8 or mode not in (0, 1):
        raise FieldFormatError(f"corrupt header (m = {m}, mode = {mode})")
    pos = _HEAD.size
    try:
        sizes = struct.unpack_from(f"<{m}Q", buf, pos)
        pos += 8 * m
        spacing = struct.unpack_from(f"<{m}d", buf, pos)
        pos += 8 * m
    except struct.error:
        raise FieldFormatError("truncated CLFF header") from None
    grid = GridSpec(sizes, CALIBRATED if mode else PERIODIC, spacing)
    count = 2 * (1 << m) * int(np.prod(sizes))
    if len(buf) - pos != 8 * count:
        raise FieldFormatError(f"expected {8 * count} payload bytes, found {len(buf) - pos}")
    planes = np.frombuffer(buf, dtype="<f8", count=count, offset=pos)
    planes = planes.reshape((1 << m, 2) + tuple(sizes))
    return MultivectorField(grid, planes[:, 0] + 1j * planes[:, 1])


def write_field(path: str | os.PathLike, field: MultivectorField) -> None:
    with open(path, "wb") as fh:
        fh.write(dumps(field))


def read_field(path: str | os.PathLike) -> MultivectorField:
    with open(path, "rb") as fh:
        return loads(fh.read())
