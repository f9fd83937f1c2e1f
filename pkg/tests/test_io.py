import struct

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from cliffconv.fieldio import FieldFormatError, dumps, loads, read_field, write_field
from cliffconv.gft import GridSpec, MultivectorField
from cliffconv.ppm import PPMError, read_ppm, write_ppm

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda m: st.tuples(
    st.just(m), st.lists(st.integers(1, 4), min_size=m, max_size=m))), st.data())
def test_field_round_trip_is_bit_exact(shape, data):
    m, sizes = shape
    grid = GridSpec(sizes)
    full = ((1 << m),) + tuple(sizes)
    re = data.draw(hnp.arrays(np.float64, full, elements=finite))
    im = data.draw(hnp.arrays(np.float64, full, elements=finite))
    f = MultivectorField(grid, re + 1j * im)
    g = loads(dumps(f))
    assert g.grid == grid
    assert np.array_equal(g.data.view(np.uint64), f.data.view(np.uint64))


def test_calibrated_grid_survives_and_files_work(tmp_path):
    grid = GridSpec.calibrated(4, 2, 0.3)
    f = MultivectorField.random(grid, np.random.default_rng(0), True)
    path = tmp_path / "f.clff"
    write_field(path, f)
    g = read_field(path)
    assert g.grid == grid and np.array_equal(g.data, f.data)
    assert path.read_bytes()[:4] == b"CLFF"


def test_header_layout():
    f = MultivectorField.zeros(GridSpec((3, 2)))
    buf = dumps(f)
    assert struct.unpack_from("<4sIII2Q2d", buf) == (b"CLFF", 1, 2, 0, 3, 2, 1.0, 1.0)
    assert len(buf) == 16 + 16 + 16 + 8 * 2 * 4 * 6


@pytest.mark.parametrize("mutate,match", [
    (lambda b: b"XXXX" + b[4:], "magic"),
    (lambda b: b[:4] + struct.pack("<I", 9) + b[8:], "version"),
    (lambda b: b[:8] + struct.pack("<I", 0) + b[12:], "corrupt"),
    (lambda b: b[:-8], "payload"),
    (lambda b: b + b"\0" * 8, "payload"),
    (lambda b: b[:20], "truncated"),
    (lambda b: b[:6], "short"),
])
def test_bad_fields_are_rejected(mutate, match):
    buf = dumps(MultivectorField.zeros(GridSpec((3, 2))))
    with pytest.raises(FieldFormatError, match=match):
        loads(mutate(buf))


def test_ppm_round_trip(tmp_path):
    px = np.random.default_rng(1).integers(0, 256, (5, 7, 3), dtype=np.uint8)
    path = tmp_path / "a.ppm"
    write_ppm(path, px)
    assert path.read_bytes().startswith(b"P6\n7 5\n255\n")
    assert np.array_equal(read_ppm(path), px)


def test_ppm_header_comments(tmp_path):
    raster = bytes(range(12))
    path = tmp_path / "c.ppm"
    path.write_bytes(b"P6 # made by hand\n2 # width\n# a full comment line\n2\n255\n" + raster)
    px = read_ppm(path)
    assert px.shape == (2, 2, 3) and px.tobytes() == raster


def test_ppm_raster_may_start_with_whitespace_bytes(tmp_path):
    raster = b"\n \t" + bytes(9)
    path = tmp_path / "w.ppm"
    path.write_bytes(b"P6\n1 4\n255\n" + raster)
    assert read_ppm(path).tobytes() == raster


@pytest.mark.parametrize("content,match", [
    (b"P3\n1 1\n255\n\0\0\0", "binary PPM"),
    (b"P6\n1 1\n65535\n\0\0\0\0\0\0", "maxval"),
    (b"P6\n2 2\n255\n\0\0\0", "raster"),
    (b"P6\n2 x\n255\n", "token"),
    (b"P6\n2 2", "truncated"),
])
def test_bad_ppm(tmp_path, content, match):
    path = tmp_path / "bad.ppm"
    path.write_bytes(content)
    with pytest.raises(PPMError, match=match):
        read_ppm(path)


def test_write_ppm_validates(tmp_path):
    with pytest.raises(PPMError):
        write_ppm(tmp_path / "x.ppm", np.zeros((2, 2, 3), dtype=np.float64))
    with pytest.raises(PPMError):
        write_ppm(tmp_path / "x.ppm", np.zeros((2, 2), dtype=np.uint8))
