"""Independent oracles shared by the test modules."""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np

from cliffconv.clifford import Multivector

_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_I2 = np.eye(2, dtype=complex)


@lru_cache(maxsize=None)
def euclidean_gammas(m: int) -> tuple[np.ndarray, ...]:
    """Hermitian, pairwise anticommuting matrices squaring to the identity (Jordan-Wigner)."""
    q = max(1, math.ceil(m / 2))
    out = []
    for k in range(m):
        site, which = divmod(k, 2)
        mats = [_Z] * site + [_X if which == 0 else _Y] + [_I2] * (q - site - 1)
        g = mats[0]
        for a in mats[1:]:
            g = np.kron(g, a)
        out.append(g)
    return tuple(out)


def rep(mv: Multivector) -> np.ndarray:
    """Matrix image of a multivector; generators map to ``1j * gamma_k`` (squares to -1)."""
    gams = euclidean_gammas(mv.m)
    dim = gams[0].shape[0]
    out = np.zeros((dim, dim), dtype=complex)
    for b, c in enumerate(mv.coeffs):
        if c == 0:
            continue
        mat = np.eye(dim, dtype=complex)
        for k in range(mv.m):
            if b >> k & 1:
                mat = mat @ (1j * gams[k])
        out += c * mat
    return out


def field_point(data: np.ndarray, idx) -> Multivector:
    m = int(round(math.log2(data.shape[0])))
    return Multivector(m, data[(slice(None),) + tuple(idx)])


def brute_gft(left, right, data: np.ndarray, coords, freqs, weight: float) -> np.ndarray:
    """Literal double sum of the two-sided kernel with multivector exponentials.

    ``left``/``right`` are ``(axis, Multivector root)`` pairs in kernel order.
    """
    m = int(round(math.log2(data.shape[0])))
    sizes = data.shape[1:]
    out = np.zeros_like(data, dtype=complex)
    points = list(itertools.product(*(range(n) for n in sizes)))
    values = {x: field_point(data, x) for x in points}
    for u in points:
        acc = Multivector.zero(m)
        for x in points:
            L = Multivector.scalar(m)
            for axis, root in left:
                th = coords[axis][x[axis]] * freqs[axis][u[axis]]
                L = L * (math.cos(th) - math.sin(th) * root)
            R = Multivector.scalar(m)
            for axis, root in right:
                th = coords[axis][x[axis]] * freqs[axis][u[axis]]
                R = R * (math.cos(th) - math.sin(th) * root)
            acc = acc + L * values[x] * R
        out[(slice(None),) + u] = acc.coeffs * weight
    return out


def brute_convolve(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """``sum_y f(y) g(x - y)`` on the torus with multivector products at every point."""
    m = int(round(math.log2(f.shape[0])))
    sizes = f.shape[1:]
    points = list(itertools.product(*(range(n) for n in sizes)))
    out = np.zeros_like(f, dtype=complex)
    for x in points:
        acc = Multivector.zero(m)
        for y in points:
            d = tuple((a - b) % n for a, b, n in zip(x, y, sizes))
            acc = acc + field_point(f, y) * field_point(g, d)
        out[(slice(None),) + x] = acc.coeffs
    return out


def rel(a, b) -> float:
    a, b = np.asarray(a), np.asarray(b)
    ref = float(np.linalg.norm(b))
    return float(np.linalg.norm(a - b)) / (ref if ref > 0 else 1.0)
